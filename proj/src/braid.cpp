#include "linkoid/braid.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

namespace linkoid {

Diagram from_braid(int strands, const std::vector<int>& word, const std::vector<int>& closed_positions) {
  if (strands < 1) throw DiagramError("a braid needs at least one strand");
  // at[p]: strand currently at position p; strands are named by their bottom position.
  std::vector<int> at(static_cast<std::size_t>(strands));
  std::iota(at.begin(), at.end(), 0);
  std::vector<std::vector<Passage>> path(static_cast<std::size_t>(strands));
  std::vector<int> signs;
  for (const int g : word) {
    const int i = std::abs(g) - 1;
    if (g == 0 || i + 1 >= strands) {
      throw DiagramError("braid generator " + std::to_string(g) + " invalid on " + std::to_string(strands) +
                         " strands");
    }
    const int x = static_cast<int>(signs.size());
    const int left = at[i];
    const int right = at[i + 1];
    const bool left_over = g > 0;
    signs.push_back(left_over ? 1 : -1);
    path[left].push_back({x, left_over ? Level::over : Level::under});
    path[right].push_back({x, left_over ? Level::under : Level::over});
    std::swap(at[i], at[i + 1]);
  }
  std::vector<bool> closed(static_cast<std::size_t>(strands), false);
  for (const int p : closed_positions) {
    if (p < 1 || p > strands) throw DiagramError("closure position " + std::to_string(p) + " out of range");
    closed[p - 1] = true;
  }
  // Strand s ends at top position end_pos[s]; a closed top continues into the
  // strand starting at the same bottom position.
  std::vector<int> end_pos(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) end_pos[at[p]] = p;

  std::vector<bool> used(static_cast<std::size_t>(strands), false);
  std::vector<OpenComponent> open;
  for (int s = 0; s < strands; ++s) {
    if (closed[s]) continue;
    OpenComponent comp;
    const int j = static_cast<int>(open.size()) + 1;
    comp.leg = 2 * j - 1;
    comp.head = 2 * j;
    int cur = s;
    for (;;) {
      used[cur] = true;
      comp.passages.insert(comp.passages.end(), path[cur].begin(), path[cur].end());
      const int top = end_pos[cur];
      if (!closed[top]) break;
      cur = top;
    }
    open.push_back(std::move(comp));
  }
  std::vector<ClosedComponent> rings;
  for (int s = 0; s < strands; ++s) {
    if (used[s]) continue;
    ClosedComponent comp;
    int cur = s;
    do {
      used[cur] = true;
      comp.passages.insert(comp.passages.end(), path[cur].begin(), path[cur].end());
      cur = end_pos[cur];
    } while (cur != s);
    rings.push_back(std::move(comp));
  }
  return Diagram(std::move(open), std::move(rings), std::move(signs));
}

Diagram braid_closure(int strands, const std::vector<int>& word) {
  std::vector<int> all(static_cast<std::size_t>(strands));
  std::iota(all.begin(), all.end(), 1);
  return from_braid(strands, word, all);
}

}  // namespace linkoid
