#include "linkoid/moves.hpp"

#include <string>

#include "passage_edit.hpp"

namespace linkoid {

namespace {

void check_crossing(const Diagram& d, int x) {
  if (x < 0 || x >= d.crossing_count()) {
    throw DiagramError("no crossing " + std::to_string(x + 1) + " in a diagram with " +
                       std::to_string(d.crossing_count()));
  }
}

// Passages strictly after index i and before index j, walking cyclically.
std::vector<Passage> cyclic_between(const std::vector<Passage>& ps, int i, int j) {
  std::vector<Passage> out;
  const int n = static_cast<int>(ps.size());
  for (int k = (i + 1) % n; k != j; k = (k + 1) % n) out.push_back(ps[k]);
  return out;
}

std::vector<Passage> slice(const std::vector<Passage>& ps, int from, int to) {
  return {ps.begin() + from, ps.begin() + to};
}

std::vector<Passage> concat(std::vector<Passage> a, const std::vector<Passage>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Diagram switch_crossing(const Diagram& d, int x) {
  check_crossing(d, x);
  auto f = detail::PassageForm::of(d);
  for (int k = 0; k < f.component_count(); ++k) {
    for (auto& p : f.passages(k)) {
      if (p.crossing == x) p.level = p.level == Level::over ? Level::under : Level::over;
    }
  }
  f.signs[x] = -f.signs[x];
  return f.compact({});
}

Diagram oriented_smoothing(const Diagram& d, int x) {
  check_crossing(d, x);
  auto f = detail::PassageForm::of(d);
  const auto a = detail::find_passage(f, x, Level::over);
  const auto b = detail::find_passage(f, x, Level::under);
  detail::PassageForm g;
  g.signs = f.signs;
  std::vector<bool> touched(static_cast<std::size_t>(f.component_count()), false);
  touched[a.component] = touched[b.component] = true;

  if (a.component == b.component) {
    const int i = std::min(a.index, b.index);
    const int j = std::max(a.index, b.index);
    const auto& ps = f.passages(a.component);
    if (f.is_open(a.component)) {
      const auto& comp = f.open[a.component];
      g.open.push_back({comp.leg, comp.head, concat(slice(ps, 0, i), slice(ps, j + 1, static_cast<int>(ps.size())))});
      g.closed.push_back({slice(ps, i + 1, j)});
    } else {
      g.closed.push_back({cyclic_between(ps, i, j)});
      g.closed.push_back({cyclic_between(ps, j, i)});
    }
  } else {
    // Incoming over continues along the outgoing under strand and vice versa.
    const auto& pa = f.passages(a.component);
    const auto& pb = f.passages(b.component);
    const bool oa = f.is_open(a.component);
    const bool ob = f.is_open(b.component);
    if (oa && ob) {
      const auto& ca = f.open[a.component];
      const auto& cb = f.open[b.component];
      g.open.push_back({ca.leg, cb.head,
                        concat(slice(pa, 0, a.index), slice(pb, b.index + 1, static_cast<int>(pb.size())))});
      g.open.push_back({cb.leg, ca.head,
                        concat(slice(pb, 0, b.index), slice(pa, a.index + 1, static_cast<int>(pa.size())))});
    } else if (oa || ob) {
      const auto open_ref = oa ? a : b;
      const auto closed_ref = oa ? b : a;
      const auto& po = f.passages(open_ref.component);
      const auto& pc = f.passages(closed_ref.component);
      const auto& co = f.open[open_ref.component];
      std::vector<Passage> ring = cyclic_between(pc, closed_ref.index, closed_ref.index);
      if (pc.size() == 1) ring.clear();
      g.open.push_back({co.leg, co.head,
                        concat(concat(slice(po, 0, open_ref.index), ring),
                               slice(po, open_ref.index + 1, static_cast<int>(po.size())))});
    } else {
      auto ring = [](const std::vector<Passage>& ps, int i) {
        std::vector<Passage> out;
        for (std::size_t k = 1; k < ps.size(); ++k) out.push_back(ps[(i + k) % ps.size()]);
        return out;
      };
      g.closed.push_back({concat(ring(pa, a.index), ring(pb, b.index))});
    }
  }
  for (int k = 0; k < f.component_count(); ++k) {
    if (touched[k]) continue;
    if (f.is_open(k)) {
      g.open.push_back(f.open[k]);
    } else {
      g.closed.push_back(f.closed[k - f.open.size()]);
    }
  }
  std::vector<bool> dead(f.signs.size(), false);
  dead[x] = true;
  return g.compact(dead);
}

Diagram add_kink(const Diagram& d, int component, int position, int sign, bool over_first) {
  if (component < 0 || component >= d.component_count()) {
    throw DiagramError("no component " + std::to_string(component + 1));
  }
  if (sign != 1 && sign != -1) throw DiagramError("kink sign must be +1 or -1");
  auto f = detail::PassageForm::of(d);
  auto& ps = f.passages(component);
  if (position < 0 || position > static_cast<int>(ps.size())) {
    throw DiagramError("kink position " + std::to_string(position) + " out of range");
  }
  const int x = static_cast<int>(f.signs.size());
  f.signs.push_back(sign);
  const Passage first{x, over_first ? Level::over : Level::under};
  const Passage second{x, over_first ? Level::under : Level::over};
  ps.insert(ps.begin() + position, {first, second});
  return f.compact({});
}

}  // namespace linkoid
