#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkoid/segcycle.hpp"

namespace linkoid {

// Default ceiling on the number of crossings a state enumeration may expand.
inline constexpr int kDefaultCrossingCap = 26;

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CrossingCapExceeded : public std::runtime_error {
 public:
  CrossingCapExceeded(int crossings, int cap, const std::string& context = "");
  int crossings() const { return crossings_; }
  int cap() const { return cap_; }

 private:
  int crossings_;
  int cap_;
};

enum class Level : std::uint8_t { under, over };

// One visit of a component to a crossing, in traversal order.
struct Passage {
  int crossing = 0;
  Level level = Level::under;

  friend bool operator==(const Passage&, const Passage&) = default;
};

// Oriented from leg to head. Legs carry odd labels, heads even labels; the
// head-leg pairing relates 2k-1 and 2k regardless of which component holds them.
struct OpenComponent {
  int leg = 1;
  int head = 2;
  std::vector<Passage> passages;

  friend bool operator==(const OpenComponent&, const OpenComponent&) = default;
};

// Cyclic passage sequence; an empty sequence is a crossingless circle.
struct ClosedComponent {
  std::vector<Passage> passages;

  friend bool operator==(const ClosedComponent&, const ClosedComponent&) = default;
};

// End of an arc in the planar code: a crossing slot, or an endpoint label.
struct ArcEnd {
  int crossing = -1;
  int slot = -1;
  int label = 0;

  bool is_endpoint() const { return crossing < 0; }
  friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

struct PlanarArc {
  ArcEnd tail;
  ArcEnd head;
  int component = 0;  // index into open components, then closed components
};

// Extended PD view. Crossing slots are counterclockwise starting at the
// incoming under-strand: slot 0 under-in, slot 2 under-out; the over strand
// runs 3 -> 1 at a positive crossing and 1 -> 3 at a negative one.
struct PlanarCode {
  std::vector<PlanarArc> arcs;
  std::vector<std::array<int, 4>> crossings;
  int free_loops = 0;
};

// Slot at which a passage enters or leaves its crossing.
int entry_slot(Level level, int sign);
int exit_slot(Level level, int sign);

// A linkoid diagram on S^2 with any mix of open and closed components.
// Immutable once constructed; the constructor validates crossing incidence,
// endpoint labels and planarity (Euler characteristic of the face structure).
class Diagram {
 public:
  Diagram() = default;
  Diagram(std::vector<OpenComponent> open, std::vector<ClosedComponent> closed,
          std::vector<int> signs);

  // n disjoint crossingless arcs.
  static Diagram trivial(int n);

  const std::vector<OpenComponent>& open_components() const { return open_; }
  const std::vector<ClosedComponent>& closed_components() const { return closed_; }
  const std::vector<int>& signs() const { return signs_; }
  const PlanarCode& planar_code() const { return code_; }

  int open_count() const { return static_cast<int>(open_.size()); }
  int closed_count() const { return static_cast<int>(closed_.size()); }
  int component_count() const { return open_count() + closed_count(); }
  int crossing_count() const { return static_cast<int>(signs_.size()); }
  bool empty() const { return component_count() == 0; }
  bool is_link() const { return open_.empty() && !closed_.empty(); }

  int sign(int crossing) const { return signs_.at(static_cast<std::size_t>(crossing)); }
  int writhe() const;

  // Every crossing switched.
  Diagram mirrored() const;

  // Relabelled form: open components by leg label, closed components and
  // their starting points chosen greedily for the smallest encoding, crossings
  // numbered by first visit. Diagrams that differ only by such relabelling
  // usually share a canonical form.
  Diagram canonical() const;
  // Compact key for the canonical form.
  std::string signature() const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.open_ == b.open_ && a.closed_ == b.closed_ && a.signs_ == b.signs_;
  }

 private:
  std::vector<OpenComponent> open_;
  std::vector<ClosedComponent> closed_;
  std::vector<int> signs_;
  PlanarCode code_;
};

// Faces of the diagram's underlying graph, traced with the slot rotation.
// Each face is a cyclic list of darts; dart 2a runs along arc a, 2a+1 against it.
struct FaceStructure {
  std::vector<std::vector<int>> faces;
  std::vector<int> face_of_dart;
  int connected_pieces = 0;
};

FaceStructure face_structure(const Diagram& d);

enum class Smooth : std::uint8_t { A, B };
using Smoothing = std::vector<Smooth>;

struct StateResolution {
  int circ = 0;
  Pairing pairing;  // J_S on the endpoint labels; empty for link diagrams
  int sigma = 0;    // #A - #B
};

// A-smoothing joins slots (0,1) and (2,3); B-smoothing joins (0,3) and (1,2).
StateResolution resolve(const Diagram& d, const Smoothing& s);

// Visits all 2^c states once, smoothing k chosen by bit k of a counter.
// Returns the number of states visited.
std::uint64_t for_each_state(
    const Diagram& d,
    const std::function<void(const Smoothing&, const StateResolution&)>& visit,
    int cap = kDefaultCrossingCap);

}  // namespace linkoid
