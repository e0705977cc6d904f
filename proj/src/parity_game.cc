#include "popctl/parity_game.hh"

#include <algorithm>
#include <unordered_map>

#include "popctl/errors.hh"

namespace popctl {

NodeId ParityGame::add_node(Player owner) {
    owner_.push_back(owner);
    out_.emplace_back();
    return static_cast<NodeId>(owner_.size() - 1);
}

void ParityGame::add_edge(NodeId from, NodeId to, std::uint32_t priority) {
    out_[from].push_back(ParityEdge{to, priority});
    max_priority_ = std::max(max_priority_, priority);
}

std::size_t ParityGame::num_edges() const {
    std::size_t n = 0;
    for (const auto& o : out_) n += o.size();
    return n;
}

namespace {

Player opponent(Player p) { return p == Player::one ? Player::two : Player::one; }

// Node-priority game in compressed adjacency form.
struct Expanded {
    std::vector<std::uint32_t> priority;
    std::vector<Player> owner;
    std::vector<std::uint32_t> out_begin, out;
    std::vector<std::uint32_t> in_begin, in;

    std::size_t size() const { return priority.size(); }
};

Expanded expand(const ParityGame& game) {
    const std::size_t n = game.num_nodes();
    Expanded x;
    std::uint32_t neutral = game.max_priority() + (game.max_priority() % 2);
    x.priority.assign(n, neutral);
    x.owner.resize(n);
    for (NodeId v = 0; v < n; ++v) x.owner[v] = game.owner(v);

    std::unordered_map<std::uint64_t, std::uint32_t> relay;
    std::vector<std::uint32_t> relay_target;
    x.out_begin.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (game.out(v).empty()) throw ContractViolation("parity game node without successor");
        for (const ParityEdge& e : game.out(v)) {
            std::uint64_t key = (std::uint64_t{e.priority} << 32) | e.target;
            auto [it, fresh] = relay.emplace(key, static_cast<std::uint32_t>(x.priority.size()));
            if (fresh) {
                x.priority.push_back(e.priority);
                x.owner.push_back(game.owner(v));
                relay_target.push_back(e.target);
            }
            x.out.push_back(it->second);
        }
        x.out_begin[v + 1] = static_cast<std::uint32_t>(x.out.size());
    }
    const std::size_t total = x.priority.size();
    x.out_begin.resize(total + 1);
    for (std::size_t r = n; r < total; ++r) {
        x.out.push_back(relay_target[r - n]);
        x.out_begin[r + 1] = static_cast<std::uint32_t>(x.out.size());
    }

    x.in_begin.assign(total + 1, 0);
    for (std::uint32_t w : x.out) ++x.in_begin[w + 1];
    for (std::size_t v = 0; v < total; ++v) x.in_begin[v + 1] += x.in_begin[v];
    x.in.resize(x.out.size());
    std::vector<std::uint32_t> fill(x.in_begin.begin(), x.in_begin.end() - 1);
    for (std::uint32_t v = 0; v < total; ++v)
        for (std::uint32_t k = x.out_begin[v]; k < x.out_begin[v + 1]; ++k) x.in[fill[x.out[k]]++] = v;
    return x;
}

class Zielonka {
public:
    explicit Zielonka(const Expanded& g)
        : g_(g),
          alive_(g.size(), 0),
          winner_(g.size(), Player::two),
          strategy_(g.size(), -1),
          mark_(g.size(), 0),
          count_stamp_(g.size(), 0),
          count_(g.size(), 0) {}

    void run() {
        std::vector<std::uint32_t> all(g_.size());
        for (std::uint32_t v = 0; v < all.size(); ++v) all[v] = v;
        solve(std::move(all), 0);
    }

    const std::vector<Player>& winner() const { return winner_; }
    const std::vector<std::int32_t>& strategy() const { return strategy_; }

private:
    bool in_game(std::uint32_t v, int depth) const { return alive_[v] >= depth; }

    // Attractor for p inside the subgame at `depth`, seeded with `seed`. Returns the
    // attracted nodes (seed included) and records attracting moves for p.
    std::vector<std::uint32_t> attractor(const std::vector<std::uint32_t>& seed, Player p, int depth) {
        ++stamp_;
        std::vector<std::uint32_t> result;
        for (std::uint32_t v : seed) {
            mark_[v] = stamp_;
            result.push_back(v);
        }
        for (std::size_t head = 0; head < result.size(); ++head) {
            std::uint32_t u = result[head];
            for (std::uint32_t k = g_.in_begin[u]; k < g_.in_begin[u + 1]; ++k) {
                std::uint32_t w = g_.in[k];
                if (mark_[w] == stamp_ || !in_game(w, depth)) continue;
                if (g_.owner[w] == p) {
                    strategy_[w] = edge_index(w, u);
                    mark_[w] = stamp_;
                    result.push_back(w);
                    continue;
                }
                if (count_stamp_[w] != stamp_) {
                    count_stamp_[w] = stamp_;
                    std::uint32_t c = 0;
                    for (std::uint32_t j = g_.out_begin[w]; j < g_.out_begin[w + 1]; ++j)
                        if (in_game(g_.out[j], depth)) ++c;
                    count_[w] = c;
                }
                if (--count_[w] == 0) {
                    strategy_[w] = -1;
                    mark_[w] = stamp_;
                    result.push_back(w);
                }
            }
        }
        return result;
    }

    std::int32_t edge_index(std::uint32_t v, std::uint32_t target) const {
        for (std::uint32_t j = g_.out_begin[v]; j < g_.out_begin[v + 1]; ++j)
            if (g_.out[j] == target) return static_cast<std::int32_t>(j - g_.out_begin[v]);
        return -1;
    }

    std::int32_t any_edge_inside(std::uint32_t v, int depth) const {
        for (std::uint32_t j = g_.out_begin[v]; j < g_.out_begin[v + 1]; ++j)
            if (in_game(g_.out[j], depth)) return static_cast<std::int32_t>(j - g_.out_begin[v]);
        return -1;
    }

    // Solves the subgame formed by `nodes`; every node of it has alive_ >= depth on
    // entry. On return winner_/strategy_ are final for all of `nodes`.
    void solve(std::vector<std::uint32_t> nodes, int depth) {
        while (!nodes.empty()) {
            for (std::uint32_t v : nodes) alive_[v] = depth;
            std::uint32_t p = g_.priority[nodes[0]];
            for (std::uint32_t v : nodes) p = std::min(p, g_.priority[v]);
            Player alpha = p % 2 == 1 ? Player::one : Player::two;
            Player beta = opponent(alpha);

            std::vector<std::uint32_t> top;
            for (std::uint32_t v : nodes)
                if (g_.priority[v] == p) top.push_back(v);
            std::vector<std::uint32_t> a = attractor(top, alpha, depth);
            for (std::uint32_t v : top)
                if (g_.owner[v] == alpha) strategy_[v] = any_edge_inside(v, depth);
            std::uint32_t a_stamp = stamp_;

            std::vector<std::uint32_t> rest;
            for (std::uint32_t v : nodes)
                if (mark_[v] != a_stamp) rest.push_back(v);
            for (std::uint32_t v : rest) alive_[v] = depth + 1;
            solve(rest, depth + 1);
            for (std::uint32_t v : rest) alive_[v] = depth;

            std::vector<std::uint32_t> lost;
            for (std::uint32_t v : rest)
                if (winner_[v] == beta) lost.push_back(v);
            if (lost.empty()) {
                for (std::uint32_t v : a) winner_[v] = alpha;
                for (std::uint32_t v : a)
                    if (g_.owner[v] != alpha) strategy_[v] = -1;
                return;
            }

            std::vector<std::uint32_t> b = attractor(lost, beta, depth);
            std::uint32_t b_stamp = stamp_;
            for (std::uint32_t v : b) {
                winner_[v] = beta;
                if (g_.owner[v] != beta) strategy_[v] = -1;
                alive_[v] = depth - 1;
            }
            std::vector<std::uint32_t> remaining;
            for (std::uint32_t v : nodes)
                if (mark_[v] != b_stamp) remaining.push_back(v);
            nodes = std::move(remaining);
        }
    }

    const Expanded& g_;
    std::vector<int> alive_;
    std::vector<Player> winner_;
    std::vector<std::int32_t> strategy_;
    std::vector<std::uint32_t> mark_;
    std::vector<std::uint32_t> count_stamp_;
    std::vector<std::uint32_t> count_;
    std::uint32_t stamp_ = 0;
};

}  // namespace

ParitySolution solve_parity(const ParityGame& game) {
    ParitySolution sol;
    if (game.num_nodes() == 0) return sol;
    Expanded x = expand(game);
    Zielonka z(x);
    z.run();
    sol.winner.assign(z.winner().begin(), z.winner().begin() + static_cast<std::ptrdiff_t>(game.num_nodes()));
    sol.strategy.assign(z.strategy().begin(), z.strategy().begin() + static_cast<std::ptrdiff_t>(game.num_nodes()));
    return sol;
}

}  // namespace popctl
