#include "popctl/capacity.hh"

#include <map>

#include "popctl/errors.hh"

namespace popctl {

std::vector<StateSet> separation_rows(const TransferGraph& g) {
    const StateSet image = g.im();
    std::vector<StateSet> sep(g.num_states());
    for (State q = 0; q < g.num_states(); ++q) {
        StateSet row = g.row(q);
        if (row.empty()) continue;
        StateSet missing = image.minus(row);
        for (State r : row) sep[r] |= missing;
    }
    return sep;
}

std::set<StatePair> separations(const TransferGraph& g) {
    std::set<StatePair> out;
    auto rows = separation_rows(g);
    for (State r = 0; r < rows.size(); ++r)
        for (State t : rows[r]) out.emplace(r, t);
    return out;
}

std::optional<LeakWitness> leaks_at(const TransferGraph& g, const TransferGraph& h) {
    for (State q = 0; q < g.num_states(); ++q) {
        StateSet reach = g.row(q);
        if (reach.empty()) continue;
        StateSet gh = h.apply(reach);
        for (State x = 0; x < h.num_states(); ++x) {
            if (reach.contains(x)) continue;
            StateSet hit = h.row(x) & gh;
            if (!hit.empty()) return LeakWitness{q, x, hit.first()};
        }
    }
    return std::nullopt;
}

std::size_t count_entries(const std::vector<TransferGraph>& play, const std::vector<StateSet>& acc) {
    if (acc.size() != play.size() + 1)
        throw ValidationError("accumulator has " + std::to_string(acc.size()) + " sets, expected " +
                              std::to_string(play.size() + 1));
    std::size_t entries = 0;
    for (std::size_t j = 0; j < play.size(); ++j) {
        const TransferGraph& g = play[j];
        StateSet support = g.dom();
        if (!acc[j].subset_of(support))
            throw ValidationError("accumulator set " + std::to_string(j) + " leaves the support");
        if (!g.apply(acc[j]).subset_of(acc[j + 1]))
            throw ValidationError("accumulator is not successor-closed at index " + std::to_string(j));
        for (State s : support.minus(acc[j])) entries += (g.row(s) & acc[j + 1]).size();
    }
    if (!play.empty() && !acc.back().subset_of(play.back().im()))
        throw ValidationError("accumulator set " + std::to_string(play.size()) + " leaves the support");
    return entries;
}

CapacityVerdict lasso_capacity(const LassoPlay& play) {
    if (play.cycle.empty()) throw ValidationError("lasso cycle must be nonempty");
    const std::size_t p = play.prefix.size();
    const std::size_t c = play.cycle.size();
    auto graph_at = [&](std::size_t k) -> const TransferGraph& {
        return k < p ? play.prefix[k] : play.cycle[(k - p) % c];
    };

    for (std::size_t i = 0; i < p + c; ++i) {
        // state after consuming graph_at(i..j-1): (G[i, j], phase of j)
        std::map<std::pair<TransferGraph, std::size_t>, std::size_t> seen;
        std::vector<bool> leak;
        std::vector<TransferGraph> composed;
        TransferGraph acc = graph_at(i);
        for (std::size_t j = i + 1;; ++j) {
            if (j >= p) {
                auto key = std::make_pair(acc, (j - p) % c);
                auto [it, fresh] = seen.emplace(key, j);
                if (!fresh) {
                    for (std::size_t k = it->second; k < j; ++k) {
                        if (leak[k - i - 1]) {
                            return CapacityVerdict{Capacity::infinite, i, k, composed[k - i - 1]};
                        }
                    }
                    break;
                }
            }
            leak.push_back(leaks_at(acc, graph_at(j)).has_value());
            composed.push_back(acc);
            acc = compose(acc, graph_at(j));
        }
    }
    return CapacityVerdict{};
}

std::optional<LoopPartition> loop_partition(const TransferGraph& h, StateSet s) {
    if (h.dom() != s || h.im() != s) throw ContractViolation("loop_partition: graph is not a loop on the support");
    const std::uint64_t full = s.bits();
    for (std::uint64_t u = full & (~full + 1); u != 0; u = ((u | ~full) + 1) & full) {
        StateSet us{u};
        StateSet ts = s.minus(us);
        if (!h.apply(us).subset_of(us)) continue;
        if (h.apply(ts).intersects(us)) return LoopPartition{ts, us};
    }
    return std::nullopt;
}

}  // namespace popctl
