#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linkoid/bracket.hpp"
#include "linkoid/poly.hpp"
#include "linkoid/projection.hpp"

namespace linkoid {

// Projections of modest polygons can exceed the single-diagram default; the
// recursive evaluator handles these sizes in milliseconds.
inline constexpr int kSphereCrossingCap = 40;

enum class SamplingMode { fibonacci, random };

struct SamplerConfig {
  SamplingMode mode = SamplingMode::fibonacci;
  int sample_count = 50'000;
  std::uint64_t seed = 1;
  double eps = kDefaultProjectionEps;
  int max_redraws = 8;
  int threads = 1;
  // Use sample_count/2 base directions followed by their negatives.
  bool antipodal = false;
  // Exceeding it anywhere fails the run, naming the largest offender.
  int crossing_cap = kSphereCrossingCap;
  std::size_t cache_max_entries = 1'000'000;
  // Shared cache, e.g. across a sweep; a private one is used when null.
  BracketCache* cache = nullptr;
};

struct TypeCount {
  std::uint64_t count = 0;
  ExactPoly value;    // per-sample polynomial of this type
  Vec3 direction;     // first direction that produced it
  int crossings = 0;  // of the simplified representative
};

struct SphereEstimate {
  RealPoly mean;  // in A
  ExactPoly sum;  // sum over samples; mean = sum / samples_used
  // Standard error per A-exponent; filled in random mode only.
  std::map<int, double> stderr_by_exponent;
  int samples_used = 0;
  int degenerate_count = 0;  // redraws performed
  std::map<std::string, TypeCount> census;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::size_t cache_entries = 0;

  double cache_hit_rate() const {
    const auto total = cache_hits + cache_misses;
    return total ? static_cast<double>(cache_hits) / static_cast<double>(total) : 0.0;
  }
};

// Directions in sampling order, before any redraw.
std::vector<Vec3> sample_directions(const SamplerConfig& cfg);

// A small rotation of xi used for the k-th redraw of sample i.
Vec3 jittered_direction(const Vec3& xi, int sample, int attempt, double eps);

SphereEstimate estimate_jones(const CurveSet& c, const SamplerConfig& cfg);
SphereEstimate estimate_bracket(const CurveSet& c, const SamplerConfig& cfg);

// interpolate_closure at each s, then estimate_jones; one cache serves all.
std::vector<std::pair<double, SphereEstimate>> sweep(const CurveSet& c, const std::vector<double>& s_values,
                                                     const SamplerConfig& cfg);

}  // namespace linkoid
