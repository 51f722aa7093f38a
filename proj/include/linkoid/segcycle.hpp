#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linkoid {

// A fixed-point-free involution on the endpoint labels {1, ..., 2n}, stored as
// its image array. Cycle notation is used only for text I/O.
class Pairing {
 public:
  Pairing() = default;

  // image[a - 1] = J(a); validated as a fixed-point-free involution.
  explicit Pairing(std::vector<int> image);

  static Pairing from_pairs(int n, std::span<const std::pair<int, int>> pairs);
  // Parses "(1 3)(2 4)". Every label 1..2n must appear exactly once.
  static Pairing parse(const std::string& cycles);

  int operator()(int label) const { return image_[static_cast<std::size_t>(label - 1)]; }

  int label_count() const { return static_cast<int>(image_.size()); }
  int pair_count() const { return label_count() / 2; }
  std::span<const int> image() const { return image_; }

  // Pairs (a, J(a)) with a < J(a), ascending in a.
  std::vector<std::pair<int, int>> pairs() const;
  std::string to_string() const;

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  std::vector<int> image_;
};

// HL = (1 2)(3 4)...(2n-1 2n).
Pairing head_leg_pairing(int n);

// Orbit of `label` under x -> HL(J(x)), ascending.
std::vector<int> orbit(int label, const Pairing& j, const Pairing& hl);

struct SegmentCyclePartition {
  // Each class ascending; classes ordered by their smallest label.
  std::vector<std::vector<int>> classes;

  std::size_t size() const { return classes.size(); }
  friend bool operator==(const SegmentCyclePartition&, const SegmentCyclePartition&) = default;
};

// Classes of the equivalence generated by J and HL together.
SegmentCyclePartition segment_cycles(const Pairing& j, const Pairing& hl);

int cycle_count(const Pairing& j, const Pairing& hl);

// Allocation-light count used by the state sum. `image` is a pairing image in
// the layout of Pairing::image(); HL is implied by the labels.
int count_segment_cycles(std::span<const int> image);

// The decorated-circle order of the segment cycle through `label`:
// a, J(a), HL(J(a)), J(HL(J(a))), ..., HL(a).
std::vector<int> decorated_circle(int label, const Pairing& j, const Pairing& hl);

}  // namespace linkoid
