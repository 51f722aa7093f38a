#pragma once

#include "linkoid/diagram.hpp"

namespace linkoid {

// Crossing x with over and under exchanged; all other data unchanged.
Diagram switch_crossing(const Diagram& d, int x);

// Orientation-respecting smoothing of crossing x. Endpoint labels stay with
// their endpoints, so open components may trade heads.
Diagram oriented_smoothing(const Diagram& d, int x);

// Inserts a curl on `component` (open components first, then closed) just
// before passage `position` (0..passage count). The new crossing is the last
// one; it is met under first unless `over_first`.
Diagram add_kink(const Diagram& d, int component, int position, int sign, bool over_first);

}  // namespace linkoid
