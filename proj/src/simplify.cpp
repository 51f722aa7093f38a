#include "linkoid/simplify.hpp"

#include <algorithm>
#include <optional>

#include "passage_edit.hpp"
#include "port_graph.hpp"

namespace linkoid {

namespace {

using detail::PassageForm;
using detail::PassageRef;

// Index of the passage following i in component k, if any.
std::optional<int> next_index(PassageForm& f, int k, int i) {
  const int n = static_cast<int>(f.passages(k).size());
  if (i + 1 < n) return i + 1;
  if (!f.is_open(k) && n > 1) return 0;
  return std::nullopt;
}

void erase_passages(PassageForm& f, std::vector<PassageRef> refs) {
  std::sort(refs.begin(), refs.end(), [](const PassageRef& a, const PassageRef& b) {
    return a.component != b.component ? a.component < b.component : a.index > b.index;
  });
  for (const auto& r : refs) {
    auto& ps = f.passages(r.component);
    ps.erase(ps.begin() + r.index);
  }
}

// Removes one curl; returns its contribution to the twist, or 0 if none.
int remove_kink(PassageForm& f, std::vector<bool>& dead) {
  for (int k = 0; k < f.component_count(); ++k) {
    const auto& ps = f.passages(k);
    for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
      const auto j = next_index(f, k, i);
      if (!j || ps[*j].crossing != ps[i].crossing) continue;
      const int x = ps[i].crossing;
      const int sign = f.signs[x];
      const int leave = exit_slot(ps[i].level, sign);
      const int enter = entry_slot(ps[*j].level, sign);
      // The loop closes off under whichever smoothing joins its two slots.
      const int twist = detail::smoothing_partner(leave, false) == enter ? 1 : -1;
      erase_passages(f, {{k, i}, {k, *j}});
      dead[x] = true;
      return twist;
    }
  }
  return 0;
}

// True when the smoothing joining slots s and t at a crossing is the B type.
bool joins_by_b(int s, int t) { return detail::smoothing_partner(s, true) == t; }

bool remove_bigon(PassageForm& f, std::vector<bool>& dead) {
  for (int k = 0; k < f.component_count(); ++k) {
    const auto& ps = f.passages(k);
    for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
      const auto j = next_index(f, k, i);
      if (!j || ps[i].level != Level::over || ps[*j].level != Level::over) continue;
      const int x = ps[i].crossing;
      const int y = ps[*j].crossing;
      if (x == y) continue;
      const PassageRef ux = detail::find_passage(f, x, Level::under);
      const PassageRef uy = detail::find_passage(f, y, Level::under);
      if (ux.component != uy.component) continue;
      const bool forward = next_index(f, ux.component, ux.index) == uy.index;
      const bool backward = next_index(f, uy.component, uy.index) == ux.index;
      if (!forward && !backward) continue;
      // Bigon slots: the over arc leaves x and enters y; the under arc joins
      // slot 2 of one crossing to slot 0 of the other.
      const int mx = exit_slot(Level::over, f.signs[x]);
      const int my = entry_slot(Level::over, f.signs[y]);
      const int nx = forward ? 2 : 0;
      const int ny = forward ? 0 : 2;
      if (joins_by_b(mx, nx) == joins_by_b(my, ny)) continue;
      if (f.signs[x] + f.signs[y] != 0) continue;
      erase_passages(f, {{k, i}, {k, *j}, ux, uy});
      dead[x] = dead[y] = true;
      return true;
    }
  }
  return false;
}

}  // namespace

SimplifyResult simplify(const Diagram& d) {
  SimplifyResult out;
  out.diagram = d;
  for (;;) {
    auto f = PassageForm::of(out.diagram);
    std::vector<bool> dead(f.signs.size(), false);
    bool changed = false;
    while (const int t = remove_kink(f, dead)) {
      out.twist += t;
      ++out.kinks_removed;
      changed = true;
    }
    if (remove_bigon(f, dead)) {
      ++out.bigons_removed;
      changed = true;
    }
    if (!changed) break;
    out.diagram = f.compact(dead);
  }
  return out;
}

}  // namespace linkoid
