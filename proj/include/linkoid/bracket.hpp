#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "linkoid/diagram.hpp"
#include "linkoid/poly.hpp"

namespace linkoid {

struct BracketResult {
  ExactPoly bracket;
  int writhe = 0;
  ExactPoly jones_A;  // (-A^3)^(-writhe) * bracket
  std::uint64_t states_evaluated = 0;
  bool cache_hit = false;
  int crossings = 0;             // of the input diagram
  int simplified_crossings = 0;  // after curl and bigon removal
};

// Memo of brackets of simplified diagrams keyed by signature. Safe to share
// between threads. Inserts stop once max_entries is reached.
class BracketCache {
 public:
  explicit BracketCache(std::size_t max_entries = 1'000'000) : max_entries_(max_entries) {}

  std::optional<ExactPoly> find(const std::string& key) const;
  void insert(const std::string& key, const ExactPoly& value);

  std::size_t size() const;
  std::size_t max_entries() const { return max_entries_; }
  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  std::size_t max_entries_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, ExactPoly> map_;
  mutable std::atomic<std::uint64_t> hits_{0};
  mutable std::atomic<std::uint64_t> misses_{0};
};

enum class Strategy { automatic, enumerate, recurse };

struct BracketOptions {
  int cap = kDefaultCrossingCap;  // on the simplified diagram
  int enumeration_limit = 18;     // automatic strategy enumerates up to here
  bool simplify = true;
  Strategy strategy = Strategy::automatic;
  BracketCache* cache = nullptr;
};

// (-A^3)^k.
ExactPoly kink_factor(int k);

// Full 2^c state sum, no simplification.
ExactPoly bracket_by_enumeration(const Diagram& d, int cap = kDefaultCrossingCap,
                                 std::uint64_t* states = nullptr);
// Skein recursion with curl removal and memoization, no simplification.
ExactPoly bracket_by_recursion(const Diagram& d, int cap = kDefaultCrossingCap,
                               std::uint64_t* states = nullptr);

// Throws DiagramError("empty collection") for a diagram with no components.
ExactPoly bracket(const Diagram& d, const BracketOptions& opts = {});
BracketResult jones(const Diagram& d, const BracketOptions& opts = {});

// Joins each head 2k to leg 2k-1 by an arc through the face that holds both,
// yielding a link diagram with the same crossings. Throws DiagramError
// "not a valid crossing-free closure" when some pair does not share a face or
// the joining arcs would have to cross.
Diagram close_linkoid(const Diagram& d);

struct SkeinCheck {
  bool holds = false;
  ExactPoly f_plus;
  ExactPoly f_minus;
  ExactPoly f_zero;
};

// Builds L- and L0 from the diagram at crossing `site` and tests
// A^4 f(L+) - A^-4 f(L-) = (A^-2 - A^2) f(L0). A negative site is treated as
// the L- member of the triple.
SkeinCheck skein_check(const Diagram& d, int site);

}  // namespace linkoid
