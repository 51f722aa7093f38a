#pragma once

// Slot-level wiring of a diagram used by the state sums. Port 4x+s is slot s
// of crossing x; endpoint label e is port 4c+e-1. link[] follows the arcs.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "linkoid/diagram.hpp"

namespace linkoid::detail {

// Slot joined to `slot` by the A-smoothing (slot ^ 1) or the B-smoothing (3 - slot).
inline int smoothing_partner(int slot, bool b_smoothing) { return b_smoothing ? 3 - slot : slot ^ 1; }

struct PortGraph {
  int crossings = 0;
  int labels = 0;
  int free_loops = 0;
  std::vector<int> link;

  static PortGraph build(const Diagram& d);

  int endpoint_port(int label) const { return 4 * crossings + label - 1; }
  bool is_endpoint(int port) const { return port >= 4 * crossings; }
  int label_of(int port) const { return port - 4 * crossings + 1; }
};

// Resolves single states of a fixed port graph without reallocating.
class StateEvaluator {
 public:
  explicit StateEvaluator(const PortGraph& g)
      : g_(g), stamp_(g.link.size(), 0), pairing_(static_cast<std::size_t>(g.labels), 0) {}

  // Number of closed loops in the state; the endpoint pairing is left in
  // pairing(). is_b(x) selects the B-smoothing at crossing x.
  template <class ChoiceFn>
  int run(ChoiceFn&& is_b) {
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    for (int e = 1; e <= g_.labels; ++e) {
      const int start = g_.endpoint_port(e);
      if (stamp_[start] == epoch_) continue;
      stamp_[start] = epoch_;
      int p = g_.link[start];
      while (!g_.is_endpoint(p)) {
        stamp_[p] = epoch_;
        const int x = p >> 2;
        const int q = (x << 2) | smoothing_partner(p & 3, is_b(x));
        stamp_[q] = epoch_;
        p = g_.link[q];
      }
      stamp_[p] = epoch_;
      const int other = g_.label_of(p);
      pairing_[e - 1] = other;
      pairing_[other - 1] = e;
    }
    int circ = g_.free_loops;
    const int crossing_ports = 4 * g_.crossings;
    for (int start = 0; start < crossing_ports; ++start) {
      if (stamp_[start] == epoch_) continue;
      ++circ;
      int p = start;
      do {
        stamp_[p] = epoch_;
        const int x = p >> 2;
        const int q = (x << 2) | smoothing_partner(p & 3, is_b(x));
        stamp_[q] = epoch_;
        p = g_.link[q];
      } while (p != start);
    }
    return circ;
  }

  const std::vector<int>& pairing() const { return pairing_; }

 private:
  const PortGraph& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<int> pairing_;
};

}  // namespace linkoid::detail
