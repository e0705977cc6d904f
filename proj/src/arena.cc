#include "popctl/arena.hh"

#include <deque>
#include <unordered_set>

#include "popctl/errors.hh"

namespace popctl {

std::uint32_t transition_priority(bool goal_seen, Support next, State target, const LevelEvents& events) {
    if (goal_seen || next == Support::singleton(target)) return 1;
    return static_cast<std::uint32_t>(std::min(2 * events.leak_level + 1, 2 * events.change_level));
}

std::uint32_t neutral_priority(std::size_t num_states) {
    return static_cast<std::uint32_t>(2 * num_states * num_states + 2);
}

NodeKey node_key(Support s, const TrackingList& list) {
    NodeKey k;
    k.reserve(2 + list.size() * (list.empty() ? 0 : list[0].num_states()));
    k.push_back(s.bits());
    k.push_back(list.size());
    for (const auto& g : list)
        for (StateSet r : g.rows()) k.push_back(r.bits());
    return k;
}

std::size_t NodeKeyHash::operator()(const NodeKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : k) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

const TrackingList& ParityArena::list_of(NodeId v) const {
    const PgNode& n = nodes[v];
    return n.kind == PgNode::Kind::respond ? nodes[n.origin].list : n.list;
}

ParityArena build_arena(const Nfa& nfa, std::size_t node_budget) {
    if (!nfa.is_sink(nfa.target())) throw ContractViolation("build_arena: target must be a sink");
    ParityArena arena;
    ParityGame& game = arena.game;
    const std::uint32_t neutral = neutral_priority(nfa.num_states());
    const State f = nfa.target();

    auto check_budget = [&] {
        if (arena.nodes.size() >= node_budget)
            throw BudgetExceeded("parity arena exceeds node budget of " + std::to_string(node_budget),
                                 arena.nodes.size());
    };

    arena.win = game.add_node(Player::one);
    arena.nodes.push_back(PgNode{PgNode::Kind::win, Support::singleton(f), 0, 0, {}});
    game.add_edge(arena.win, arena.win, 1);
    ++arena.stats.priority_histogram[1];

    // Any play through a support with a dead state is lost for every population
    // size, so such supports are not expanded.
    arena.dead = nfa.all_states().minus(coreachable(nfa));
    arena.lose = game.add_node(Player::two);
    arena.nodes.push_back(PgNode{PgNode::Kind::lose, arena.dead, 0, 0, {}});
    game.add_edge(arena.lose, arena.lose, 2);
    ++arena.stats.priority_histogram[2];

    std::deque<NodeId> queue;
    auto choose_node = [&](Support s, TrackingList list) -> NodeId {
        if (s == Support::singleton(f)) return arena.win;
        NodeKey key = node_key(s, list);
        auto it = arena.index.find(key);
        if (it != arena.index.end()) return it->second;
        check_budget();
        NodeId v = game.add_node(Player::one);
        arena.nodes.push_back(PgNode{PgNode::Kind::choose, s, 0, 0, std::move(list)});
        arena.index.emplace(std::move(key), v);
        queue.push_back(v);
        ++arena.stats.choose_nodes;
        return v;
    };

    arena.initial = choose_node(Support::singleton(nfa.initial()), {});

    std::unordered_set<std::uint64_t> seen_moves;
    TransferGraph g;
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        const Support s = arena.nodes[v].support;
        for (Letter a = 0; a < nfa.num_letters(); ++a) {
            check_budget();
            NodeId w = game.add_node(Player::two);
            arena.nodes.push_back(PgNode{PgNode::Kind::respond, s, a, v, {}});
            ++arena.stats.respond_nodes;
            game.add_edge(v, w, neutral);
            ++arena.stats.priority_histogram[neutral];

            seen_moves.clear();
            CompatibleGraphs graphs(nfa, s, a);
            while (graphs.next(g)) {
                Support next = g.im();
                NodeId target;
                std::uint32_t prio;
                if (next == Support::singleton(f)) {
                    target = arena.win;
                    prio = 1;
                } else if (next.intersects(arena.dead)) {
                    target = arena.lose;
                    prio = 2;
                } else {
                    ListUpdate up = update_list(arena.nodes[v].list, g);
                    prio = transition_priority(false, next, f, up.events);
                    target = choose_node(next, std::move(up.list));
                }
                if (!seen_moves.insert((std::uint64_t{prio} << 32) | target).second) continue;
                game.add_edge(w, target, prio);
                ++arena.stats.priority_histogram[prio];
            }
        }
    }
    arena.stats.edges = game.num_edges();
    return arena;
}

}  // namespace popctl
