#include "popctl/popsim.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "popctl/errors.hh"

namespace popctl {

std::uint32_t Config::m() const { return std::accumulate(counts.begin(), counts.end(), std::uint32_t{0}); }

Support Config::support() const {
    Support s;
    for (State q = 0; q < counts.size(); ++q)
        if (counts[q] > 0) s.insert(q);
    return s;
}

Config initial_config(const Nfa& nfa, std::uint32_t m) {
    if (m == 0) throw ValidationError("population size must be at least 1");
    Config c{std::vector<std::uint32_t>(nfa.num_states(), 0)};
    c.counts[nfa.initial()] = m;
    return c;
}

bool is_synchronized(const Nfa& nfa, const Config& cfg) { return cfg.support() == Support::singleton(nfa.target()); }

void validate_split(const Nfa& nfa, const Config& cfg, Letter a, const Split& s) {
    if (s.n != nfa.num_states() || cfg.counts.size() != nfa.num_states())
        throw ValidationError("split has wrong dimension");
    for (State q = 0; q < s.n; ++q) {
        std::uint64_t out = 0;
        StateSet legal = nfa.successors(q, a);
        for (State r = 0; r < s.n; ++r) {
            if (s.at(q, r) == 0) continue;
            if (!legal.contains(r))
                throw InvalidSplit(nfa.state_name(q), "state " + nfa.state_name(q) + ": no " + nfa.letter_name(a) + "-edge to " +
                                      nfa.state_name(r));
            out += s.at(q, r);
        }
        if (out != cfg.counts[q])
            throw InvalidSplit(nfa.state_name(q), "state " + nfa.state_name(q) + ": split moves " + std::to_string(out) +
                                  " agents but " + std::to_string(cfg.counts[q]) + " are there");
    }
}

Config apply_split(const Nfa& nfa, const Config& cfg, Letter a, const Split& s) {
    validate_split(nfa, cfg, a, s);
    Config next{std::vector<std::uint32_t>(s.n, 0)};
    for (State q = 0; q < s.n; ++q)
        for (State r = 0; r < s.n; ++r) next.counts[r] += s.at(q, r);
    return next;
}

Projection project(const Config& cfg, const Split& s) {
    Projection p{cfg.support(), TransferGraph(s.n), {}};
    for (State q = 0; q < s.n; ++q)
        for (State r = 0; r < s.n; ++r)
            if (s.at(q, r) > 0) p.graph.add_edge(q, r);
    p.after = p.graph.im();
    return p;
}

std::vector<std::vector<std::uint32_t>> compositions(std::uint32_t total, std::size_t parts) {
    std::vector<std::vector<std::uint32_t>> out;
    if (parts == 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    std::vector<std::uint32_t> cur(parts, 0);
    // odometer over the first parts-1 entries, last one takes the remainder
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i + 1 == parts) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t k = 0; k <= left; ++k) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, total);
    return out;
}

namespace {

std::vector<State> successor_list(const Nfa& nfa, State q, Letter a) {
    std::vector<State> out;
    for (State r : nfa.successors(q, a)) out.push_back(r);
    return out;
}

class EvenAdversary : public Adversary {
public:
    Split choose(const Nfa& nfa, const Config& cfg, Letter a) override {
        Split s(nfa.num_states());
        for (State q = 0; q < s.n; ++q) {
            if (cfg.counts[q] == 0) continue;
            auto d = successor_list(nfa, q, a);
            std::uint32_t k = static_cast<std::uint32_t>(d.size());
            for (std::uint32_t i = 0; i < k; ++i) s.at(q, d[i]) = cfg.counts[q] / k + (i < cfg.counts[q] % k ? 1 : 0);
        }
        return s;
    }
};

class OneOffAdversary : public Adversary {
public:
    Split choose(const Nfa& nfa, const Config& cfg, Letter a) override {
        Split s(nfa.num_states());
        for (State q = 0; q < s.n; ++q) {
            std::uint32_t c = cfg.counts[q];
            if (c == 0) continue;
            auto d = successor_list(nfa, q, a);
            if (d.size() > 1 && c > 1) {
                s.at(q, d[1]) = 1;
                s.at(q, d[0]) = c - 1;
            } else {
                s.at(q, d[0]) = c;
            }
        }
        return s;
    }
};

class RandomAdversary : public Adversary {
public:
    explicit RandomAdversary(std::uint64_t seed) : rng_(seed) {}

    Split choose(const Nfa& nfa, const Config& cfg, Letter a) override {
        Split s(nfa.num_states());
        for (State q = 0; q < s.n; ++q) {
            std::uint32_t c = cfg.counts[q];
            if (c == 0) continue;
            auto d = successor_list(nfa, q, a);
            // uniform weak composition: choose |d|-1 bar positions among c+|d|-1 slots
            std::size_t slots = c + d.size() - 1;
            std::vector<std::size_t> all(slots);
            std::iota(all.begin(), all.end(), std::size_t{0});
            std::vector<std::size_t> bars;
            std::sample(all.begin(), all.end(), std::back_inserter(bars), d.size() - 1, rng_);
            std::size_t prev = 0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                std::size_t end = i < bars.size() ? bars[i] : slots;
                s.at(q, d[i]) = static_cast<std::uint32_t>(end - prev);
                prev = end + 1;
            }
        }
        return s;
    }

private:
    std::mt19937_64 rng_;
};

class ScriptedAdversary : public Adversary {
public:
    explicit ScriptedAdversary(std::vector<Split> script) : script_(std::move(script)) {}

    Split choose(const Nfa&, const Config&, Letter) override {
        if (next_ >= script_.size()) throw ValidationError("adversary script exhausted");
        return script_[next_++];
    }

private:
    std::vector<Split> script_;
    std::size_t next_ = 0;
};

State require_state(const Nfa& nfa, std::string_view name) {
    auto q = nfa.find_state(name);
    if (!q) throw ValidationError("scripted strategy needs a state named '" + std::string(name) + "'");
    return *q;
}

Letter require_letter(const Nfa& nfa, std::string_view name) {
    auto a = nfa.find_letter(name);
    if (!a) throw ValidationError("scripted strategy needs an action named '" + std::string(name) + "'");
    return *a;
}

class TimePolicy : public Policy {
public:
    explicit TimePolicy(const Nfa& nfa)
        : q0_(require_state(nfa, "q0")),
          qtop_(require_state(nfa, "qtop")),
          qbot_(require_state(nfa, "qbot")),
          k_(require_state(nfa, "k")),
          try_(require_letter(nfa, "try")),
          keep_(require_letter(nfa, "keep")),
          top_(require_letter(nfa, "top")),
          bot_(require_letter(nfa, "bot")),
          restart_(require_letter(nfa, "restart")) {}

    std::optional<Letter> choose(const Config& cfg) override {
        const auto& n = cfg.counts;
        if (n[q0_] > 0) return try_;
        if (n[qtop_] > 0 && n[qbot_] > 0) return keep_;
        if (n[qtop_] > 0) return top_;
        if (n[qbot_] > 0) return bot_;
        if (n[k_] > 0) return restart_;
        return std::nullopt;
    }

private:
    State q0_, qtop_, qbot_, k_;
    Letter try_, keep_, top_, bot_, restart_;
};

class SplitPolicy : public Policy {
public:
    explicit SplitPolicy(const Nfa& nfa)
        : q0_(require_state(nfa, "q0")),
          q1_(require_state(nfa, "q1")),
          q2_(require_state(nfa, "q2")),
          a_(require_letter(nfa, "a")),
          b_(require_letter(nfa, "b")),
          delta_(require_letter(nfa, "delta")) {}

    std::optional<Letter> choose(const Config& cfg) override {
        const auto& n = cfg.counts;
        if (n[q0_] > 0) return delta_;
        return n[q1_] > n[q2_] ? a_ : b_;
    }

private:
    State q0_, q1_, q2_;
    Letter a_, b_, delta_;
};


}  // namespace

std::unique_ptr<Adversary> make_adversary(const AdversaryPolicy& policy) {
    switch (policy.kind) {
    case AdversaryPolicy::Kind::even: return std::make_unique<EvenAdversary>();
    case AdversaryPolicy::Kind::one_off: return std::make_unique<OneOffAdversary>();
    case AdversaryPolicy::Kind::random: return std::make_unique<RandomAdversary>(policy.seed);
    case AdversaryPolicy::Kind::scripted: return std::make_unique<ScriptedAdversary>(policy.script);
    }
    throw ValidationError("unknown adversary kind");
}

std::optional<Letter> ControllerPolicy::choose(const Config&) {
    if (c_.is_goal(node_)) return last_;
    last_ = c_.nodes[node_].action;
    return last_;
}

void ControllerPolicy::observe(const TransferGraph& graph) { node_ = c_.step(node_, graph).next; }

std::unique_ptr<Policy> scripted_time_policy(const Nfa& nfa) { return std::make_unique<TimePolicy>(nfa); }
std::unique_ptr<Policy> scripted_split_policy(const Nfa& nfa) { return std::make_unique<SplitPolicy>(nfa); }

RunOutcome run(const Nfa& nfa, Policy& policy, std::uint32_t m, Adversary& adversary, std::size_t budget,
               bool record_trace) {
    const StateSet alive = coreachable(nfa);
    RunOutcome out;
    Config cfg = initial_config(nfa, m);
    for (;;) {
        if (is_synchronized(nfa, cfg)) {
            out.status = RunStatus::won;
            return out;
        }
        if (!cfg.support().subset_of(alive)) {
            out.status = RunStatus::lost;
            return out;
        }
        if (out.steps >= budget) {
            out.status = RunStatus::budget_exhausted;
            return out;
        }
        std::optional<Letter> a = policy.choose(cfg);
        if (!a) {
            out.status = RunStatus::stuck;
            return out;
        }
        Split s = adversary.choose(nfa, cfg, *a);
        Config next = apply_split(nfa, cfg, *a, s);
        policy.observe(project(cfg, s).graph);
        cfg = std::move(next);
        ++out.steps;
        if (record_trace) out.trace.push_back(TraceStep{*a, std::move(s), cfg});
    }
}

RunOutcome run(const Nfa& nfa, const Controller& c, std::uint32_t m, const AdversaryPolicy& adversary,
               std::size_t budget, bool record_trace) {
    ControllerPolicy p(c);
    auto adv = make_adversary(adversary);
    return run(nfa, p, m, *adv, budget, record_trace);
}

std::string format_trace(const Nfa& nfa, const std::vector<TraceStep>& trace) {
    std::ostringstream out;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const TraceStep& t = trace[k];
        out << "step " << (k + 1) << ": action=" << nfa.letter_name(t.action) << " split=";
        bool first = true;
        for (State q = 0; q < t.split.n; ++q) {
            for (State r = 0; r < t.split.n; ++r) {
                if (t.split.at(q, r) == 0) continue;
                out << (first ? "" : ",") << nfa.state_name(q) << "->" << nfa.state_name(r) << ':' << t.split.at(q, r);
                first = false;
            }
        }
        out << " config=";
        first = true;
        for (State q = 0; q < t.config.counts.size(); ++q) {
            if (t.config.counts[q] == 0) continue;
            out << (first ? "" : ",") << nfa.state_name(q) << ':' << t.config.counts[q];
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

using Key = std::string;  // one byte per state

Key key_of(const std::vector<std::uint32_t>& counts) { return Key(counts.begin(), counts.end()); }

// Distinct successor configurations of (cfg, a), built state by state.
std::vector<Key> successor_configs(const Nfa& nfa, const Key& cfg, Letter a, std::size_t cap) {
    std::vector<Key> partial{Key(cfg.size(), '\0')};
    for (State q = 0; q < cfg.size(); ++q) {
        auto c = static_cast<unsigned char>(cfg[q]);
        if (c == 0) continue;
        std::vector<State> d;
        for (State r : nfa.successors(q, a)) d.push_back(r);
        auto comps = compositions(c, d.size());
        std::unordered_set<Key> seen;
        std::vector<Key> next;
        for (const Key& base : partial) {
            for (const auto& comp : comps) {
                Key k = base;
                for (std::size_t i = 0; i < d.size(); ++i)
                    k[d[i]] = static_cast<char>(static_cast<unsigned char>(k[d[i]]) + comp[i]);
                if (seen.insert(k).second) {
                    next.push_back(std::move(k));
                    if (next.size() > cap)
                        throw BudgetExceeded("successor cap of " + std::to_string(cap) + " exceeded", next.size());
                }
            }
        }
        partial = std::move(next);
    }
    return partial;
}

}  // namespace

ExactResult exact_solve(const Nfa& nfa, std::uint32_t m, const ExactBudget& budget) {
    if (m == 0) throw ValidationError("population size must be at least 1");
    if (m > 255) throw ValidationError("exact solving supports at most 255 agents");
    const std::size_t nl = nfa.num_letters();
    const Config init = initial_config(nfa, m);
    std::vector<std::uint32_t> goal_counts(nfa.num_states(), 0);
    goal_counts[nfa.target()] = m;
    const Key goal = key_of(goal_counts);

    std::unordered_map<Key, std::uint32_t> index;
    std::vector<Key> configs;
    auto intern = [&](const Key& k) -> std::uint32_t {
        auto [it, fresh] = index.emplace(k, static_cast<std::uint32_t>(configs.size()));
        if (fresh) {
            if (configs.size() >= budget.max_configs)
                throw BudgetExceeded("configuration budget of " + std::to_string(budget.max_configs) + " exceeded",
                                     configs.size());
            configs.push_back(k);
        }
        return it->second;
    };
    std::uint32_t start = intern(key_of(init.counts));

    // succ of (c, a) lives in succ[begin[c * nl + a] .. begin[c * nl + a + 1])
    std::vector<std::uint32_t> succ;
    std::vector<std::size_t> begin{0};
    for (std::uint32_t c = 0; c < configs.size(); ++c) {
        const bool is_goal = configs[c] == goal;
        for (Letter a = 0; a < nl; ++a) {
            if (!is_goal) {
                Key here = configs[c];
                for (const Key& k : successor_configs(nfa, here, a, budget.max_successors)) succ.push_back(intern(k));
            }
            begin.push_back(succ.size());
        }
    }

    const std::size_t n = configs.size();
    std::vector<std::size_t> pred_begin(n + 1, 0);
    for (std::uint32_t d : succ) ++pred_begin[d + 1];
    for (std::size_t i = 0; i < n; ++i) pred_begin[i + 1] += pred_begin[i];
    std::vector<std::uint32_t> pred(succ.size());
    {
        std::vector<std::size_t> fill(pred_begin.begin(), pred_begin.end() - 1);
        for (std::size_t ca = 0; ca + 1 < begin.size(); ++ca)
            for (std::size_t j = begin[ca]; j < begin[ca + 1]; ++j)
                pred[fill[succ[j]]++] = static_cast<std::uint32_t>(ca);
    }

    std::vector<std::size_t> pending(n * nl);
    for (std::size_t ca = 0; ca < n * nl; ++ca) pending[ca] = begin[ca + 1] - begin[ca];
    std::vector<std::int64_t> rank(n, -1);
    std::deque<std::uint32_t> queue;
    auto goal_it = index.find(goal);
    if (goal_it != index.end()) {
        rank[goal_it->second] = 0;
        queue.push_back(goal_it->second);
    }
    // Ranks leave the queue in nondecreasing order, so the successor that releases
    // a (config, letter) pair carries the largest rank among its successors.
    while (!queue.empty()) {
        std::uint32_t d = queue.front();
        queue.pop_front();
        for (std::size_t j = pred_begin[d]; j < pred_begin[d + 1]; ++j) {
            std::uint32_t ca = pred[j];
            if (--pending[ca] != 0) continue;
            std::uint32_t c = static_cast<std::uint32_t>(ca / nl);
            if (rank[c] >= 0) continue;
            rank[c] = rank[d] + 1;
            queue.push_back(c);
        }
    }

    ExactResult r;
    r.configs = n;
    if (rank[start] >= 0) {
        r.winner = Player::one;
        r.sync_time = static_cast<std::size_t>(rank[start]);
    }
    return r;
}

Player exact_winner(const Nfa& nfa, std::uint32_t m, const ExactBudget& budget) {
    return exact_solve(nfa, m, budget).winner;
}

CutoffResult find_cutoff(const Nfa& nfa, std::uint32_t m_max, const ExactBudget& budget) {
    if (m_max == 0) throw ValidationError("m_max must be at least 1");
    CutoffResult r;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        try {
            if (exact_winner(nfa, m, budget) == Player::two) {
                r.kind = CutoffResult::Kind::cutoff;
                r.value = m;
                return r;
            }
        } catch (const BudgetExceeded& e) {
            r.kind = CutoffResult::Kind::partial;
            r.value = m - 1;
            r.note = std::string("m = ") + std::to_string(m) + ": " + e.what();
            return r;
        }
    }
    r.kind = CutoffResult::Kind::none_up_to;
    r.value = m_max;
    return r;
}

namespace {

struct Move {
    Config next;
    TransferGraph graph;
};

// Every distinct (successor configuration, projected graph) pair of (cfg, a).
std::vector<Move> all_moves(const Nfa& nfa, const Config& cfg, Letter a) {
    std::vector<Move> partial{Move{Config{std::vector<std::uint32_t>(cfg.counts.size(), 0)}, TransferGraph(cfg.counts.size())}};
    for (State q = 0; q < cfg.counts.size(); ++q) {
        if (cfg.counts[q] == 0) continue;
        std::vector<State> d;
        for (State r : nfa.successors(q, a)) d.push_back(r);
        auto comps = compositions(cfg.counts[q], d.size());
        std::vector<Move> next;
        std::set<std::pair<Config, TransferGraph>> seen;
        for (const Move& base : partial) {
            for (const auto& comp : comps) {
                Move mv = base;
                StateSet row;
                for (std::size_t i = 0; i < d.size(); ++i) {
                    if (comp[i] == 0) continue;
                    mv.next.counts[d[i]] += comp[i];
                    row.insert(d[i]);
                }
                mv.graph.set_row(q, row);
                if (seen.emplace(mv.next, mv.graph).second) next.push_back(std::move(mv));
            }
        }
        partial = std::move(next);
    }
    return partial;
}

}  // namespace

bool exhaustive_verify(const Nfa& nfa, const Controller& c, std::uint32_t m, std::size_t max_states) {
    using StateKey = std::pair<Config, std::uint32_t>;
    enum Color : std::uint8_t { on_stack, done };
    std::map<StateKey, Color> color;

    struct Frame {
        StateKey key;
        std::vector<StateKey> next;
        std::size_t i = 0;
    };

    // Expands a state; false if the controller cannot answer some legal move.
    auto expand = [&](const StateKey& s, std::vector<StateKey>& out) -> bool {
        const auto& [cfg, node] = s;
        if (c.nodes[node].support != cfg.support() || c.is_goal(node)) return false;
        Letter a = *c.nodes[node].action;
        for (Move& mv : all_moves(nfa, cfg, a)) {
            auto it = c.advance.find({node, mv.graph});
            if (it == c.advance.end()) return false;
            out.emplace_back(std::move(mv.next), it->second);
        }
        return true;
    };

    StateKey root{initial_config(nfa, m), c.initial};
    if (is_synchronized(nfa, root.first)) return true;
    std::vector<Frame> stack;
    stack.push_back(Frame{root, {}, 0});
    color[root] = on_stack;
    if (!expand(root, stack.back().next)) return false;

    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.i == top.next.size()) {
            color[top.key] = done;
            stack.pop_back();
            continue;
        }
        StateKey s = top.next[top.i++];
        if (is_synchronized(nfa, s.first)) continue;
        auto it = color.find(s);
        if (it != color.end()) {
            if (it->second == on_stack) return false;  // the adversary can loop forever
            continue;
        }
        if (color.size() >= max_states)
            throw BudgetExceeded("exhaustive verification exceeds " + std::to_string(max_states) + " states",
                                 color.size());
        color.emplace(s, on_stack);
        Frame f{s, {}, 0};
        if (!expand(s, f.next)) return false;
        stack.push_back(std::move(f));
    }
    return true;
}

}  // namespace popctl
