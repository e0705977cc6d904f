// Transfer-graph algebra used to reason about accumulators: separations, leaks,
// entry counting and brute-force capacity oracles for ultimately periodic plays.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "popctl/state_set.hh"

namespace popctl {

using StatePair = std::pair<State, State>;

/// Sep(G): pairs (r, t) with a common source q such that (q, r) in G and (q, t)
/// not in G. Only t in im(G) is considered; pairs against states outside the
/// image carry no information about the play.
std::set<StatePair> separations(const TransferGraph& g);

/// Same relation as a bit matrix: bit t of row r is set iff (r, t) in Sep(G).
std::vector<StateSet> separation_rows(const TransferGraph& g);

struct LeakWitness {
    State q;
    State x;
    State y;
};

/// G leaks at H iff some (q, y) in G.H, (x, y) in H and (q, x) not in G.
std::optional<LeakWitness> leaks_at(const TransferGraph& g, const TransferGraph& h);

/// Entries into the accumulator: edges (s, t) of play[j] with s not in acc[j] and
/// t in acc[j+1]. acc must have play.size() + 1 entries and be successor-closed.
std::size_t count_entries(const std::vector<TransferGraph>& play, const std::vector<StateSet>& acc);

struct LassoPlay {
    std::vector<TransferGraph> prefix;
    std::vector<TransferGraph> cycle;
};

enum class Capacity { finite, infinite };

struct CapacityVerdict {
    Capacity kind = Capacity::finite;
    /// Infinite only: start index i and position j with G[i, j] leaking at G_{j+1},
    /// j lying inside the repeating part.
    std::size_t start = 0;
    std::size_t leak_position = 0;
    TransferGraph composed;
};

CapacityVerdict lasso_capacity(const LassoPlay& play);

struct LoopPartition {
    StateSet t;
    StateSet u;
};

/// For a loop graph H on s (dom = im = s): a split s = T + U with U nonempty,
/// H(U) inside U, and some H-edge from T into U. Exhaustive over subsets of s.
std::optional<LoopPartition> loop_partition(const TransferGraph& h, StateSet s);

}  // namespace popctl
