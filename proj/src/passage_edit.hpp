#pragma once

// Editing diagrams in passage form: crossings marked dead are dropped and
// the survivors renumbered in their original order.

#include <vector>

#include "linkoid/diagram.hpp"

namespace linkoid::detail {

struct PassageForm {
  std::vector<OpenComponent> open;
  std::vector<ClosedComponent> closed;
  std::vector<int> signs;

  static PassageForm of(const Diagram& d) { return {d.open_components(), d.closed_components(), d.signs()}; }

  Diagram compact(const std::vector<bool>& dead) const {
    std::vector<int> id(signs.size(), -1);
    std::vector<int> kept;
    for (std::size_t x = 0; x < signs.size(); ++x) {
      if (dead.size() > x && dead[x]) continue;
      id[x] = static_cast<int>(kept.size());
      kept.push_back(signs[x]);
    }
    auto renumber = [&](std::vector<Passage> ps) {
      std::vector<Passage> out;
      for (const auto& p : ps) {
        if (id[p.crossing] >= 0) out.push_back(Passage{id[p.crossing], p.level});
      }
      return out;
    };
    std::vector<OpenComponent> o = open;
    for (auto& comp : o) comp.passages = renumber(comp.passages);
    std::vector<ClosedComponent> c = closed;
    for (auto& comp : c) comp.passages = renumber(comp.passages);
    return Diagram(std::move(o), std::move(c), std::move(kept));
  }

  std::vector<Passage>& passages(int component) {
    return component < static_cast<int>(open.size()) ? open[component].passages
                                                     : closed[component - open.size()].passages;
  }
  bool is_open(int component) const { return component < static_cast<int>(open.size()); }
  int component_count() const { return static_cast<int>(open.size() + closed.size()); }
};

// Component index and position of a crossing's under or over passage.
struct PassageRef {
  int component = -1;
  int index = -1;
};

inline PassageRef find_passage(PassageForm& f, int crossing, Level level) {
  for (int k = 0; k < f.component_count(); ++k) {
    const auto& ps = f.passages(k);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i].crossing == crossing && ps[i].level == level) return {k, static_cast<int>(i)};
    }
  }
  return {};
}

}  // namespace linkoid::detail
