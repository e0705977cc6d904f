// On-the-fly construction of the parity game over (support, tracking list).

#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "popctl/nfa.hh"
#include "popctl/parity_game.hh"
#include "popctl/support.hh"
#include "popctl/tracking_list.hh"

namespace popctl {

inline constexpr std::size_t default_node_budget = 5'000'000;

/// Priority of the step that observes graph g from a node with list `list`:
/// 1 when the next support is {f} (or the goal was already seen), otherwise
/// min(2 * leak_level + 1, 2 * change_level).
std::uint32_t transition_priority(bool goal_seen, Support next, State target, const LevelEvents& events);

/// Priority carried by edges that do not observe a graph (letter choices).
std::uint32_t neutral_priority(std::size_t num_states);

struct PgNode {
    enum class Kind : std::uint8_t { choose, respond, win, lose };
    Kind kind = Kind::choose;
    Support support;
    Letter letter = 0;        // respond only
    NodeId origin = 0;        // respond only: the choose node it came from
    TrackingList list;        // choose only
};

/// Structural memo key of a choose node: support bits, list length, graph rows.
using NodeKey = std::vector<std::uint64_t>;
NodeKey node_key(Support s, const TrackingList& list);

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept;
};

struct ArenaStats {
    std::size_t choose_nodes = 0;
    std::size_t respond_nodes = 0;
    std::size_t edges = 0;
    std::map<std::uint32_t, std::size_t> priority_histogram;
};

struct ParityArena {
    ParityGame game;
    std::vector<PgNode> nodes;
    NodeId initial = 0;
    NodeId win = 0;
    /// Absorbing node won by player two; reached as soon as some agent can no
    /// longer reach the target.
    NodeId lose = 0;
    Support dead;
    /// Choose nodes only. Respond nodes are not memoized (each has a unique origin).
    std::unordered_map<NodeKey, NodeId, NodeKeyHash> index;
    ArenaStats stats;

    const TrackingList& list_of(NodeId v) const;
};

/// Breadth-first closure from ({q0}, empty list). The target must be a sink.
/// Out-edge k of a choose node is letter k. Throws BudgetExceeded once more than
/// node_budget nodes would be created.
ParityArena build_arena(const Nfa& nfa, std::size_t node_budget = default_node_budget);

}  // namespace popctl
