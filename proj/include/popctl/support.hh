// Supports, compatible transfer graphs, and the support (infinite population) game.

#pragma once

#include <optional>
#include <vector>

#include "popctl/nfa.hh"

namespace popctl {

using Support = StateSet;

bool is_compatible(const Nfa& nfa, const TransferGraph& g, Letter a);

/// {(q, r) | q in s, r in delta(q, a)}
TransferGraph maximal_graph(const Nfa& nfa, Support s, Letter a);

Support post_support(const Nfa& nfa, Support s, Letter a);

/// States from which the target is reachable in the transition graph.
Support coreachable(const Nfa& nfa);

/// Lazy enumeration of the transfer graphs G compatible with a and dom(G) = s.
/// Each row ranges over the nonempty subsets of delta(q, a) in increasing mask
/// order; the highest state varies fastest. The last graph is the maximal one.
class CompatibleGraphs {
public:
    CompatibleGraphs(const Nfa& nfa, Support s, Letter a);

    /// Number of graphs, saturating at SIZE_MAX.
    std::size_t count() const;

    /// Writes the next graph into out; false once exhausted.
    bool next(TransferGraph& out);

private:
    std::vector<State> sources_;
    std::vector<StateSet> choices_;  // delta(q, a) per source
    std::vector<std::uint64_t> current_;
    std::size_t num_states_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<TransferGraph> compatible_graphs(const Nfa& nfa, Support s, Letter a);

enum class Player { one, two };

struct SupportGameResult {
    Player winner = Player::two;
    /// Player one: letters driving {q0} to {f} along maximal graphs.
    std::vector<Letter> witness;
    /// Player two: every support reachable from {q0}; none of them is {f}.
    std::vector<Support> safe_supports;
};

SupportGameResult solve_support_game(const Nfa& nfa);

}  // namespace popctl
