#include <cmath>
#include <random>

#include "doctest.h"
#include "linkoid/simplify.hpp"
#include "linkoid/sphere.hpp"
#include "oracles.hpp"

using namespace linkoid;

namespace {

const std::string data_dir = LINKOID_DATA_DIR;

CurveSet example2(double s) { return interpolate_closure(read_curves_file(data_dir + "/open_borromean.txt"), s); }

SamplerConfig fib(int n) {
  SamplerConfig cfg;
  cfg.sample_count = n;
  return cfg;
}

std::uint64_t census_total(const SphereEstimate& e) {
  std::uint64_t n = 0;
  for (const auto& [key, t] : e.census) n += t.count;
  return n;
}

double max_gap(const RealPoly& a, const RealPoly& b) {
  double gap = 0;
  for (const auto& [e, c] : a.terms()) gap = std::max(gap, std::abs(c - b.coefficient(e)));
  for (const auto& [e, c] : b.terms()) gap = std::max(gap, std::abs(c - a.coefficient(e)));
  return gap;
}

}  // namespace

TEST_CASE("direction sets") {
  const auto dirs = sample_directions(fib(1000));
  REQUIRE(dirs.size() == 1000);
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& d : dirs) {
    CHECK(std::abs(d.norm() - 1) < 1e-12);
    centroid += d;
  }
  CHECK(centroid.norm() / 1000 < 1e-3);
  CHECK(sample_directions(fib(1000)) == dirs);

  SamplerConfig random = fib(6);
  random.mode = SamplingMode::random;
  random.antipodal = true;
  const auto pairs = sample_directions(random);
  for (int i = 0; i < 3; ++i) CHECK(pairs[static_cast<std::size_t>(i + 3)] == -pairs[static_cast<std::size_t>(i)]);
  random.seed = 2;
  CHECK(sample_directions(random) != pairs);

  random.sample_count = 5;
  CHECK_THROWS_AS(sample_directions(random), std::invalid_argument);
  CHECK_THROWS_AS(sample_directions(fib(0)), std::invalid_argument);

  const Vec3 z(0, 0, 1);
  for (int k = 1; k <= 3; ++k) {
    const Vec3 j = jittered_direction(z, 4, k, 1e-9);
    CHECK(std::abs(j.norm() - 1) < 1e-12);
    CHECK(std::acos(std::min(1.0, j.dot(z))) == doctest::Approx(1e-8 * std::pow(10, k - 1)).epsilon(0.05));
  }
  CHECK(jittered_direction(z, 4, 1, 1e-9) == jittered_direction(z, 4, 1, 1e-9));
}

TEST_CASE("triangle averages to one") {
  CurveSet c;
  c.components.push_back(Curve{"tri", {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0.3)}, true});
  for (const SamplingMode mode : {SamplingMode::fibonacci, SamplingMode::random}) {
    SamplerConfig cfg = fib(300);
    cfg.mode = mode;
    const SphereEstimate e = estimate_jones(c, cfg);
    CHECK(e.sum == ExactPoly::constant(Rational(300)));
    CHECK(e.census.size() == 1);
    CHECK(e.samples_used == 300);
    if (mode == SamplingMode::random) {
      REQUIRE(e.stderr_by_exponent.count(0) == 1);
      CHECK(e.stderr_by_exponent.at(0) == 0.0);
    } else {
      CHECK(e.stderr_by_exponent.empty());
    }
  }
}

TEST_CASE("distant short segments average to the trivial linkoid") {
  CurveSet c;
  c.components.push_back(Curve{"", {Vec3(0, 0, 0), Vec3(0.01, 0.002, 0.003)}, false});
  c.components.push_back(Curve{"", {Vec3(5, 1, 0), Vec3(5.003, 1.01, 0.001)}, false});
  c.components.push_back(Curve{"", {Vec3(-2, 7, 3), Vec3(-2.002, 7.001, 3.01)}, false});
  const SphereEstimate e = estimate_jones(c, fib(500));
  CHECK(e.sum == oracle::d_pow(2).scaled(Rational(500)));
  const SphereEstimate b = estimate_bracket(c, fib(500));
  CHECK(b.sum == e.sum);
}

TEST_CASE("closed Borromean rings are constant over the sphere") {
  const SphereEstimate e = estimate_jones(example2(1.0), fib(400));
  std::map<TExponent, Rational> t{{TExponent{-12}, Rational(-1)}, {TExponent{-8}, Rational(3)},
                                  {TExponent{-4}, Rational(-2)},  {TExponent{0}, Rational(4)},
                                  {TExponent{4}, Rational(-2)},   {TExponent{8}, Rational(3)},
                                  {TExponent{12}, Rational(-1)}};
  const ExactPoly expected = from_t(t);
  CHECK(e.sum == expected.scaled(Rational(400)));
  for (const auto& [key, type] : e.census) CHECK(type.value == expected);
  CHECK(approx_equal(e.mean, expected, 1e-12));

  SamplerConfig random = fib(200);
  random.mode = SamplingMode::random;
  const SphereEstimate r = estimate_jones(example2(1.0), random);
  for (const auto& [exp, se] : r.stderr_by_exponent) CHECK(se == doctest::Approx(0.0));
}

TEST_CASE("census is consistent with its representatives") {
  const CurveSet c = example2(0.0);
  const SphereEstimate e = estimate_jones(c, fib(1500));
  CHECK(census_total(e) == 1500);
  BracketOptions opts;
  opts.cap = kSphereCrossingCap;
  ExactPoly sum;
  for (const auto& [key, type] : e.census) {
    sum += type.value.scaled(Rational(static_cast<std::int64_t>(type.count)));
    const ProjectionOutcome o = project(c, type.direction);
    REQUIRE(o.regular());
    CHECK(jones(*o.diagram, opts).jones_A == type.value);
    CHECK(simplify(*o.diagram).diagram.signature() == key);
  }
  CHECK(sum == e.sum);
  CHECK(approx_equal(e.mean, e.sum.scaled(Rational(1, 1500)), 1e-12));
  CHECK(e.cache_hits + e.cache_misses == 1500);
  CHECK(e.cache_misses == e.census.size());

  const SphereEstimate b = estimate_bracket(c, fib(300));
  CHECK(census_total(b) == 300);
  for (const auto& [key, type] : b.census) {
    const ProjectionOutcome o = project(c, type.direction);
    CHECK(bracket(*o.diagram, opts) == type.value);
  }
}

TEST_CASE("worker count does not change the result") {
  const CurveSet c = example2(0.5);
  SamplerConfig one = fib(600);
  SamplerConfig three = one;
  three.threads = 3;
  const SphereEstimate a = estimate_jones(c, one);
  const SphereEstimate b = estimate_jones(c, three);
  CHECK(a.sum == b.sum);
  REQUIRE(a.census.size() == b.census.size());
  for (const auto& [key, type] : a.census) {
    REQUIRE(b.census.count(key) == 1);
    CHECK(b.census.at(key).count == type.count);
    CHECK(b.census.at(key).direction == type.direction);
  }
}

TEST_CASE("mirror audit over an antipodally closed set") {
  const CurveSet c = example2(0.0);
  CurveSet inverted = c;
  for (Curve& k : inverted.components) {
    for (Vec3& p : k.points) p = -p;
  }
  SamplerConfig cfg = fib(800);
  cfg.antipodal = true;
  const SphereEstimate a = estimate_jones(c, cfg);
  const SphereEstimate b = estimate_jones(inverted, cfg);
  CHECK(b.sum == a.sum.inverted());
}

TEST_CASE("degenerate lattice directions are redrawn") {
  // The single lattice direction of a one-sample run is +x.
  CurveSet c;
  c.components.push_back(Curve{"", {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0.2)}, false});
  const SphereEstimate e = estimate_jones(c, fib(1));
  CHECK(e.degenerate_count >= 1);
  CHECK(e.sum == ExactPoly::constant(Rational(1)));
}

TEST_CASE("cap violations name the largest diagram") {
  SamplerConfig cfg = fib(200);
  cfg.crossing_cap = 5;
  try {
    estimate_jones(example2(0.0), cfg);
    FAIL("expected a cap error");
  } catch (const CrossingCapExceeded& e) {
    CHECK(e.crossings() > 5);
    CHECK(std::string(e.what()).find("direction (") != std::string::npos);
  }
}

TEST_CASE("sweep shares one cache and keeps order") {
  const CurveSet c = read_curves_file(data_dir + "/open_borromean.txt");
  CHECK(sweep(c, {}, fib(10)).empty());
  const auto rows = sweep(c, {0.0, 0.5, 1.0}, fib(300));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].first == 0.0);
  CHECK(rows[2].first == 1.0);
  CHECK(rows[1].second.sum == estimate_jones(interpolate_closure(c, 0.5), fib(300)).sum);
  CHECK(rows[2].second.census.size() >= 1);
}

TEST_CASE("small perturbations move the average a little") {
  const CurveSet c = example2(0.0);
  CurveSet moved = c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (Curve& k : moved.components) {
    for (Vec3& p : k.points) {
      Vec3 offset;
      do {
        offset = Vec3(unit(rng), unit(rng), unit(rng));
      } while (offset.norm() > 1 || offset.norm() < 1e-3);
      p += 1e-3 * offset.normalized();
    }
  }
  const SphereEstimate a = estimate_jones(c, fib(3000));
  const SphereEstimate b = estimate_jones(moved, fib(3000));
  CHECK(max_gap(a.mean, b.mean) < 0.05);
}
