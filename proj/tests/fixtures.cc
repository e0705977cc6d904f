#include "fixtures.hh"

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using namespace popctl;

std::string data_path(const std::string& name) { return std::string(POPCTL_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TransferGraph named_graph(const Nfa& nfa, std::initializer_list<std::pair<const char*, const char*>> edges) {
    TransferGraph g(nfa.num_states());
    for (auto [q, r] : edges) g.add_edge(*nfa.find_state(q), *nfa.find_state(r));
    return g;
}

std::vector<TransferGraph> time_history(const Nfa& n) {
    TransferGraph g1 = named_graph(n, {{"q0", "qtop"}, {"q0", "qbot"}});
    TransferGraph g2 = named_graph(n, {{"qtop", "q0"}, {"qbot", "k"}});
    TransferGraph g3 = named_graph(n, {{"q0", "qtop"}, {"q0", "qbot"}, {"k", "k"}});
    TransferGraph g4 = named_graph(n, {{"qtop", "q0"}, {"qbot", "k"}, {"k", "k"}});
    return {g1, g2, g3, g4, g3};
}

std::vector<TransferGraph> time_history_list(const Nfa& n) {
    return {
        named_graph(n, {{"qtop", "qtop"}, {"qtop", "qbot"}, {"qtop", "k"}, {"qbot", "k"}}),
        named_graph(n, {{"qtop", "qtop"}, {"qtop", "qbot"}, {"qbot", "k"}, {"k", "k"}}),
    };
}

std::vector<TransferGraph> three_state_history() {
    return {
        TransferGraph(3, {{0, 0}, {1, 1}, {0, 2}}),
        TransferGraph(3, {{0, 0}, {1, 1}, {2, 2}, {2, 0}, {1, 0}}),
        TransferGraph(3, {{0, 0}, {1, 1}, {1, 0}, {2, 1}}),
    };
}

TransferGraph leak_g() { return TransferGraph(2, {{0, 0}, {0, 1}, {1, 1}}); }
TransferGraph leak_h() { return TransferGraph(2, {{1, 0}, {1, 1}, {0, 0}}); }

Nfa random_nfa(std::mt19937_64& rng, std::size_t states, std::size_t letters, bool sink_target) {
    NfaBuilder b;
    for (std::size_t i = 0; i < states; ++i) b.add_state("s" + std::to_string(i));
    for (std::size_t i = 0; i < letters; ++i) b.add_letter("l" + std::to_string(i));
    b.set_initial(0);
    b.set_target(static_cast<State>(states - 1));
    std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << states) - 1);
    const State target = static_cast<State>(states - 1);
    for (State q = 0; q < states; ++q)
        for (Letter a = 0; a < letters; ++a)
            if (q == target && sink_target)
                b.add_edge(q, a, q);
            else
                for (State r : StateSet{mask(rng)}) b.add_edge(q, a, r);
    return b.build();
}

TransferGraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    TransferGraph g(n);
    for (State q = 0; q < n; ++q)
        for (State r = 0; r < n; ++r)
            if (coin(rng)) g.add_edge(q, r);
    return g;
}

ParityGame random_game(std::mt19937_64& rng, std::size_t nodes, std::size_t max_out, std::uint32_t max_priority) {
    ParityGame g;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 0; v < nodes; ++v) g.add_node(coin(rng) ? Player::one : Player::two);
    std::uniform_int_distribution<std::size_t> deg(1, max_out);
    std::uniform_int_distribution<NodeId> target(0, static_cast<NodeId>(nodes - 1));
    std::uniform_int_distribution<std::uint32_t> prio(1, max_priority);
    for (NodeId v = 0; v < nodes; ++v) {
        std::size_t d = deg(rng);
        for (std::size_t i = 0; i < d; ++i) g.add_edge(v, target(rng), prio(rng));
    }
    return g;
}

std::vector<Player> brute_force_parity(const ParityGame& game) {
    const std::size_t n = game.num_nodes();
    std::vector<Player> result(n, Player::two);
    std::vector<std::size_t> choice(n, 0);

    auto closure = [n](std::vector<std::vector<bool>> r) {
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (r[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (r[k][j]) r[i][j] = true;
        return r;
    };

    while (true) {
        auto edge_used = [&](NodeId v, std::size_t i) {
            return game.owner(v) == Player::two || choice[v] == i;
        };
        // reach[i][j]: j reachable from i in zero or more steps
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (NodeId v = 0; v < n; ++v) {
            reach[v][v] = true;
            for (std::size_t i = 0; i < game.out(v).size(); ++i)
                if (edge_used(v, i)) reach[v][game.out(v)[i].target] = true;
        }
        reach = closure(reach);

        std::vector<bool> bad(n, false);  // nodes on an even-least cycle entry
        for (std::uint32_t p = 2; p <= game.max_priority(); p += 2) {
            std::vector<std::vector<bool>> high(n, std::vector<bool>(n, false));
            for (NodeId v = 0; v < n; ++v) {
                high[v][v] = true;
                for (std::size_t i = 0; i < game.out(v).size(); ++i)
                    if (edge_used(v, i) && game.out(v)[i].priority >= p) high[v][game.out(v)[i].target] = true;
            }
            high = closure(high);
            for (NodeId v = 0; v < n; ++v)
                for (std::size_t i = 0; i < game.out(v).size(); ++i) {
                    const auto& e = game.out(v)[i];
                    if (edge_used(v, i) && e.priority == p && high[e.target][v]) bad[v] = true;
                }
        }
        for (NodeId v = 0; v < n; ++v) {
            bool two_wins = false;
            for (NodeId u = 0; u < n; ++u)
                if (bad[u] && reach[v][u]) two_wins = true;
            if (!two_wins) result[v] = Player::one;
        }

        std::size_t v = 0;
        for (; v < n; ++v) {
            if (game.owner(v) != Player::one) continue;
            if (++choice[v] < game.out(v).size()) break;
            choice[v] = 0;
        }
        if (v == n) break;
    }
    return result;
}

bool brute_force_support_win(const Nfa& nfa) {
    const std::size_t depth = std::size_t{1} << nfa.num_states();
    const Support goal = StateSet::singleton(nfa.target());
    std::function<bool(Support, std::size_t)> dfs = [&](Support s, std::size_t left) {
        if (s == goal) return true;
        if (left == 0) return false;
        for (Letter a = 0; a < nfa.num_letters(); ++a)
            if (dfs(nfa.post(s, a), left - 1)) return true;
        return false;
    };
    return dfs(StateSet::singleton(nfa.initial()), depth);
}

}  // namespace fixtures
