// The tracking list: at most |Q|^2 suffix compositions with strictly growing
// separation sets, maintained incrementally along a play.

#pragma once

#include <vector>

#include "popctl/state_set.hh"

namespace popctl {

using TrackingList = std::vector<TransferGraph>;

struct LevelEvents {
    /// Levels are 1-based; size() + 1 means "no such level".
    std::size_t leak_level = 1;
    std::size_t change_level = 1;
};

struct ListUpdate {
    TrackingList list;
    LevelEvents events;
};

/// Compose every entry with g, append g, then keep each graph only if it separates
/// a pair no earlier kept graph separates. Events are computed against the old list.
ListUpdate update_list(const TrackingList& list, const TransferGraph& g);

/// Brute force: among the suffix compositions G[i, n] for i = 0 .. n-1, keep those
/// whose Sep strictly grows over the previous kept one.
TrackingList exact_list(const std::vector<TransferGraph>& history);

/// Checks nonempty first Sep, strictly increasing Sep chain and the |Q|^2 bound.
bool is_valid_tracking_list(const TrackingList& list);

}  // namespace popctl
