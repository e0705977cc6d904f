// m-population games under the counting abstraction: splits, adversaries,
// player-one policies, simulation, and exact small-m solving.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "popctl/controller.hh"
#include "popctl/nfa.hh"
#include "popctl/support.hh"

namespace popctl {

struct Config {
    std::vector<std::uint32_t> counts;

    std::uint32_t m() const;
    Support support() const;
    auto operator<=>(const Config&) const = default;
};

Config initial_config(const Nfa& nfa, std::uint32_t m);
bool is_synchronized(const Nfa& nfa, const Config& cfg);

/// Counted refinement of a transfer graph: flow(q, r) agents move from q to r.
struct Split {
    std::size_t n = 0;
    std::vector<std::uint32_t> flow;

    explicit Split(std::size_t num_states = 0) : n(num_states), flow(num_states * num_states, 0) {}
    std::uint32_t at(State q, State r) const { return flow[q * n + r]; }
    std::uint32_t& at(State q, State r) { return flow[q * n + r]; }
    bool operator==(const Split&) const = default;
};

/// Throws ValidationError naming the first offending state.
void validate_split(const Nfa& nfa, const Config& cfg, Letter a, const Split& s);
Config apply_split(const Nfa& nfa, const Config& cfg, Letter a, const Split& s);

struct Projection {
    Support before;
    TransferGraph graph;
    Support after;
};
Projection project(const Config& cfg, const Split& s);

class Adversary {
public:
    virtual ~Adversary() = default;
    virtual Split choose(const Nfa& nfa, const Config& cfg, Letter a) = 0;
};

struct AdversaryPolicy {
    enum class Kind { even, one_off, random, scripted };
    Kind kind = Kind::even;
    std::uint64_t seed = 0;
    std::vector<Split> script;
};

std::unique_ptr<Adversary> make_adversary(const AdversaryPolicy& policy);

class Policy {
public:
    virtual ~Policy() = default;
    /// Next letter, or nothing if the policy has no rule for this configuration.
    virtual std::optional<Letter> choose(const Config& cfg) = 0;
    virtual void observe(const TransferGraph& graph) { (void)graph; }
};

/// Plays a synthesized controller; at its goal node repeats the last letter.
class ControllerPolicy : public Policy {
public:
    explicit ControllerPolicy(const Controller& c) : c_(c), node_(c.initial) {}
    std::optional<Letter> choose(const Config& cfg) override;
    void observe(const TransferGraph& graph) override;
    std::uint32_t node() const { return node_; }

private:
    const Controller& c_;
    std::uint32_t node_;
    std::optional<Letter> last_;
};

/// Hand-written strategy for the try/keep gadget: try while q0 is occupied, keep
/// while both qtop and qbot are, then top or bot, restart once only k is left.
std::unique_ptr<Policy> scripted_time_policy(const Nfa& nfa);
/// Hand-written strategy for the split gadget: delta while q0 is occupied, then a
/// if q1 holds more agents than q2, else b.
std::unique_ptr<Policy> scripted_split_policy(const Nfa& nfa);

struct TraceStep {
    Letter action;
    Split split;
    Config config;
};

enum class RunStatus { won, lost, budget_exhausted, stuck };

struct RunOutcome {
    RunStatus status = RunStatus::budget_exhausted;
    bool won() const { return status == RunStatus::won; }
    std::size_t steps = 0;
    std::vector<TraceStep> trace;
};

/// Plays until every agent is in the target, some agent can no longer reach it
/// (lost), the policy has no move (stuck), or `budget` letters were played.
RunOutcome run(const Nfa& nfa, Policy& policy, std::uint32_t m, Adversary& adversary, std::size_t budget,
               bool record_trace = false);
RunOutcome run(const Nfa& nfa, const Controller& c, std::uint32_t m, const AdversaryPolicy& adversary,
               std::size_t budget, bool record_trace = false);

/// `step k: action=<a> split=<q->r:count,...> config=<q:count,...>`, one line per step.
std::string format_trace(const Nfa& nfa, const std::vector<TraceStep>& trace);

struct ExactBudget {
    std::size_t max_configs = 2'000'000;
    std::size_t max_successors = 200'000;  // distinct successor configs of one (config, letter)
};

struct ExactResult {
    Player winner = Player::two;
    /// Player one only: optimal worst-case number of letters to synchronize.
    std::optional<std::size_t> sync_time;
    std::size_t configs = 0;
};

/// Reachability game on configurations: player one picks a letter, player two
/// picks any legal split. Throws BudgetExceeded.
ExactResult exact_solve(const Nfa& nfa, std::uint32_t m, const ExactBudget& budget = {});
Player exact_winner(const Nfa& nfa, std::uint32_t m, const ExactBudget& budget = {});

struct CutoffResult {
    enum class Kind { cutoff, none_up_to, partial };
    Kind kind = Kind::none_up_to;
    /// cutoff: the first m lost by player one. none_up_to: m_max. partial: last m decided (0 if none).
    std::uint32_t value = 0;
    std::string note;
};

CutoffResult find_cutoff(const Nfa& nfa, std::uint32_t m_max, const ExactBudget& budget = {});

/// True iff the controller synchronizes m agents against every adversary. Explores
/// (config, controller node) pairs; throws BudgetExceeded past max_states pairs.
bool exhaustive_verify(const Nfa& nfa, const Controller& c, std::uint32_t m, std::size_t max_states = 1'000'000);

/// All weak compositions of `total` into `parts` nonnegative parts, lexicographically.
std::vector<std::vector<std::uint32_t>> compositions(std::uint32_t total, std::size_t parts);

}  // namespace popctl
