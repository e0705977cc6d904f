// Finite-memory controllers extracted from the parity game, and the decision procedure.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "popctl/arena.hh"
#include "popctl/nfa.hh"

namespace popctl {

struct ControllerNode {
    Support support;
    TrackingList list;
    /// Empty at the goal node {f}; callers keep repeating their last letter there.
    std::optional<Letter> action;

    bool operator==(const ControllerNode&) const = default;
};

class Controller {
public:
    std::string nfa_hash;
    std::vector<ControllerNode> nodes;
    std::uint32_t initial = 0;
    /// (node, observed graph) -> next node, for every graph compatible with the
    /// node's action and with domain equal to its support.
    std::map<std::pair<std::uint32_t, TransferGraph>, std::uint32_t> advance;

    bool is_goal(std::uint32_t node) const { return !nodes[node].action.has_value(); }

    struct Step {
        std::optional<Letter> action;
        std::uint32_t next;
    };
    /// Action of `node` and its successor after observing `observed`. Throws
    /// ContractViolation if the graph is not a legal response at that node.
    Step step(std::uint32_t node, const TransferGraph& observed) const;

    bool operator==(const Controller&) const = default;
};

struct Decision {
    Player winner = Player::two;
    std::optional<Controller> controller;
    ArenaStats stats;
    /// The automaton the controller refers to (the input with a sink target).
    Nfa nfa;
};

/// Restricts the solved arena to player one's region reachable from the initial
/// node under the positional strategy.
Controller extract_controller(const Nfa& nfa, const ParityArena& arena, const ParitySolution& sol);

Decision decide(const Nfa& nfa, std::size_t node_budget = default_node_budget);

std::string serialize_controller(const Controller& c, const Nfa& nfa);
/// Throws FormatError on malformed documents or documents for another automaton.
Controller deserialize_controller(const std::string& doc, const Nfa& nfa);

}  // namespace popctl
