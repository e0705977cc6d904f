// Parity games with priorities on edges. A play is won by player one iff the
// least priority seen infinitely often is odd.

#pragma once

#include <cstdint>
#include <vector>

#include "popctl/support.hh"

namespace popctl {

using NodeId = std::uint32_t;

struct ParityEdge {
    NodeId target;
    std::uint32_t priority;
};

class ParityGame {
public:
    NodeId add_node(Player owner);
    void add_edge(NodeId from, NodeId to, std::uint32_t priority);

    std::size_t num_nodes() const { return owner_.size(); }
    std::size_t num_edges() const;
    Player owner(NodeId v) const { return owner_[v]; }
    const std::vector<ParityEdge>& out(NodeId v) const { return out_[v]; }
    std::uint32_t max_priority() const { return max_priority_; }

private:
    std::vector<Player> owner_;
    std::vector<std::vector<ParityEdge>> out_;
    std::uint32_t max_priority_ = 0;
};

struct ParitySolution {
    std::vector<Player> winner;
    /// For a node won by its owner: index into out(v) of a positional winning move.
    /// -1 when the owner loses the node.
    std::vector<std::int32_t> strategy;
};

/// Zielonka's recursive algorithm on the node-priority game obtained by routing
/// every edge through a relay node per (priority, target). Every node must have
/// at least one outgoing edge.
ParitySolution solve_parity(const ParityGame& game);

}  // namespace popctl
