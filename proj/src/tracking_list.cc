#include "popctl/tracking_list.hh"

#include "popctl/capacity.hh"
#include "popctl/errors.hh"

namespace popctl {

namespace {

bool rows_subset(const std::vector<StateSet>& a, const std::vector<StateSet>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].subset_of(b[i])) return false;
    return true;
}

}  // namespace

ListUpdate update_list(const TrackingList& list, const TransferGraph& g) {
    const std::size_t l = list.size();
    ListUpdate out;

    out.events.leak_level = l + 1;
    for (std::size_t r = 0; r < l; ++r) {
        if (leaks_at(list[r], g)) {
            out.events.leak_level = r + 1;
            break;
        }
    }

    std::vector<TransferGraph> staged;
    staged.reserve(l + 1);
    for (const auto& h : list) staged.push_back(compose(h, g));
    staged.push_back(g);

    std::vector<StateSet> covered(g.num_states());
    for (std::size_t i = 0; i < staged.size(); ++i) {
        auto sep = separation_rows(staged[i]);
        if (rows_subset(sep, covered)) continue;
        for (std::size_t r = 0; r < sep.size(); ++r) covered[r] |= sep[r];
        out.list.push_back(staged[i]);
    }

    out.events.change_level = l + 1;
    for (std::size_t r = 0; r < l; ++r) {
        if (r >= out.list.size() || out.list[r] != staged[r]) {
            out.events.change_level = r + 1;
            break;
        }
    }
    return out;
}

TrackingList exact_list(const std::vector<TransferGraph>& history) {
    if (history.empty()) throw ValidationError("exact_list needs a nonempty history");
    const std::size_t n = history.size();
    // suffix[i] = G[i, n] = history[i] . ... . history[n-1]
    std::vector<TransferGraph> suffix(n);
    suffix[n - 1] = history[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) suffix[i] = compose(history[i], suffix[i + 1]);

    TrackingList out;
    std::vector<StateSet> prev(history[0].num_states());
    for (std::size_t i = 0; i < n; ++i) {
        auto sep = separation_rows(suffix[i]);
        if (rows_subset(sep, prev)) continue;
        prev = sep;
        out.push_back(suffix[i]);
    }
    return out;
}

bool is_valid_tracking_list(const TrackingList& list) {
    if (list.empty()) return true;
    const std::size_t nq = list[0].num_states();
    if (list.size() > nq * nq) return false;
    std::vector<StateSet> prev(nq);
    for (const auto& h : list) {
        auto sep = separation_rows(h);
        if (!rows_subset(prev, sep) || sep == prev) return false;
        prev = std::move(sep);
    }
    return true;
}

}  // namespace popctl
