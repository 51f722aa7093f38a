#include <Eigen/Geometry>
#include <algorithm>
#include <random>

#include "doctest.h"
#include "linkoid/bracket.hpp"
#include "linkoid/projection.hpp"
#include "oracles.hpp"

using namespace linkoid;

namespace {

const std::string data_dir = LINKOID_DATA_DIR;

Curve open_curve(std::vector<Vec3> pts) { return Curve{"", std::move(pts), false}; }

CurveSet example2(double s) { return interpolate_closure(read_curves_file(data_dir + "/open_borromean.txt"), s); }

ExactPoly borromean_jones_t() {
  std::map<TExponent, Rational> t{{TExponent{-12}, Rational(-1)}, {TExponent{-8}, Rational(3)},
                                  {TExponent{-4}, Rational(-2)},  {TExponent{0}, Rational(4)},
                                  {TExponent{4}, Rational(-2)},   {TExponent{8}, Rational(3)},
                                  {TExponent{12}, Rational(-1)}};
  return from_t(t);
}

int over_component(const Diagram& d, int crossing) {
  for (int k = 0; k < d.open_count(); ++k) {
    for (const Passage& p : d.open_components()[static_cast<std::size_t>(k)].passages) {
      if (p.crossing == crossing && p.level == Level::over) return k;
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("curve input") {
  const CurveSet c = read_curves_file(data_dir + "/open_borromean.txt");
  REQUIRE(c.components.size() == 3);
  CHECK(c.components[0].name == "R");
  CHECK(c.components[0].points.size() == 16);
  CHECK(c.components[1].points.size() == 9);
  CHECK(c.components[2].points.size() == 8);
  CHECK(c.components[2].points.back() == Vec3(4, 1, 0.5));
  CHECK(c.validate().empty());

  const CurveSet back = curves_from_json(curves_to_json(c));
  REQUIRE(back.components.size() == 3);
  CHECK(back.components[1].points == c.components[1].points);
  CHECK(back.components[0].name == "R");

  CurveSet bad;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.components.push_back(open_curve({Vec3(0, 0, 0)}));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.components[0].points.push_back(Vec3(std::nan(""), 0, 0));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CurveSet crossing;
  crossing.components.push_back(open_curve({Vec3(-1, 0, 0), Vec3(1, 0, 0)}));
  crossing.components.push_back(open_curve({Vec3(0, -1, 0), Vec3(0, 1, 0)}));
  CHECK(crossing.validate().size() == 1);
}

TEST_CASE("closure interpolation") {
  const CurveSet c = read_curves_file(data_dir + "/open_borromean.txt");
  const CurveSet half = interpolate_closure(c, 0.5);
  const auto& r = half.components[0].points;
  CHECK(r.size() == 17);
  CHECK((r.back() - Vec3(1, -0.75, 0)).norm() < 1e-15);
  CHECK_FALSE(half.components[0].closed);

  const CurveSet zero = interpolate_closure(c, 0.0);
  CHECK(zero.components[1].points.back() == c.components[1].points.back());

  const CurveSet one = interpolate_closure(c, 1.0);
  for (const Curve& k : one.components) CHECK(k.closed);
  CHECK_THROWS_AS(interpolate_closure(one, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(interpolate_closure(c, 1.5), std::invalid_argument);
}

TEST_CASE("the strand nearer the viewer passes over") {
  const Vec3 z(0, 0, 1);
  for (const double height : {1.0, -1.0}) {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(-1, 0, 0), Vec3(1, 0, 0)}));
    c.components.push_back(open_curve({Vec3(0, -1, height), Vec3(0, 1, height)}));
    const ProjectionOutcome o = project(c, z);
    REQUIRE(o.regular());
    const Diagram& d = *o.diagram;
    REQUIRE(d.crossing_count() == 1);
    CHECK(d.open_components()[0].leg == 1);
    CHECK(d.open_components()[1].leg == 3);
    const int over = over_component(d, 0);
    CHECK(over == (height > 0 ? 1 : 0));
    // Seen from +z, x then y is counterclockwise.
    CHECK(d.sign(0) == (height > 0 ? -1 : 1));

    const ProjectionOutcome flipped = project(c, -z);
    REQUIRE(flipped.regular());
    CHECK(over_component(*flipped.diagram, 0) == 1 - over);
    CHECK(flipped.diagram->sign(0) == d.sign(0));
  }
}

TEST_CASE("degenerate directions are reported") {
  SUBCASE("stacked parallel segments") {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(0, 0, 0), Vec3(1, 0, 0)}));
    c.components.push_back(open_curve({Vec3(0.2, 0, 1), Vec3(1.2, 0, 1)}));
    const ProjectionOutcome o = project(c, Vec3(0, 0, 1));
    REQUIRE_FALSE(o.regular());
    std::vector<int> segs = o.degenerate->segments;
    std::sort(segs.begin(), segs.end());
    CHECK(segs == std::vector<int>{0, 1});
    CHECK(o.degenerate->reason != Degeneracy::depth_tie);
    CHECK(project(c, Vec3(0, 1, 1).normalized()).regular());
  }
  SUBCASE("segment along the view") {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(0, 0, 0), Vec3(0, 0, 1), Vec3(1, 0, 1)}));
    const ProjectionOutcome o = project(c, Vec3(0, 0, 1));
    REQUIRE_FALSE(o.regular());
    CHECK(o.degenerate->segments == std::vector<int>{0});
  }
  SUBCASE("endpoint over a strand") {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(-1, 0, 0), Vec3(1, 0, 0)}));
    c.components.push_back(open_curve({Vec3(0, 0, 1), Vec3(0, 1, 1)}));
    const ProjectionOutcome o = project(c, Vec3(0, 0, 1));
    REQUIRE_FALSE(o.regular());
    CHECK(o.degenerate->reason == Degeneracy::endpoint_on_strand);
  }
  SUBCASE("three strands through one point") {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(-1, 0, 0), Vec3(1, 0, 0)}));
    c.components.push_back(open_curve({Vec3(0, -1, 1), Vec3(0, 1, 1)}));
    c.components.push_back(open_curve({Vec3(-1, -1, 2), Vec3(1, 1, 2)}));
    const ProjectionOutcome o = project(c, Vec3(0, 0, 1));
    REQUIRE_FALSE(o.regular());
    CHECK(o.degenerate->reason == Degeneracy::triple_point);
  }
  SUBCASE("strands meeting in space") {
    CurveSet c;
    c.components.push_back(open_curve({Vec3(-1, 0, 0), Vec3(1, 0, 0)}));
    c.components.push_back(open_curve({Vec3(0, -1, 0), Vec3(0, 1, 0)}));
    const ProjectionOutcome o = project(c, Vec3(0, 0, 1));
    REQUIRE_FALSE(o.regular());
    CHECK(o.degenerate->reason == Degeneracy::depth_tie);
  }
  CHECK_THROWS_AS(project(example2(0), Vec3(0, 0, 2)), std::invalid_argument);
}

TEST_CASE("closed Borromean rings from several directions") {
  const CurveSet c = example2(1.0);
  const ExactPoly expected = borromean_jones_t();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  int regular = 0;
  for (int i = 0; i < 40; ++i) {
    const Vec3 xi = Vec3(normal(rng), normal(rng), normal(rng)).normalized();
    const ProjectionOutcome o = project(c, xi);
    if (!o.regular()) continue;
    ++regular;
    CHECK(o.diagram->is_link());
    CHECK(jones(*o.diagram).jones_A == expected);
  }
  CHECK(regular == 40);
}

TEST_CASE("open Borromean projection along the z axis") {
  const ProjectionOutcome o = project(example2(0), Vec3(0, 0, 1));
  REQUIRE(o.regular());
  const Diagram& d = *o.diagram;
  CHECK(d.open_count() == 3);
  CHECK(d.crossing_count() == 4);
  CHECK(d.writhe() == -2);
  const ExactPoly j = jones(d).jones_A;
  CHECK(j == oracle::jones(d));
  const auto t = to_t(j);
  CHECK(t.size() == 3);
  CHECK(t.at(TExponent{-8}) == Rational(1));
  CHECK(t.at(TExponent{-6}) == Rational(2));
  CHECK(t.at(TExponent{-4}) == Rational(1));
}

TEST_CASE("projection commutes with rotations") {
  const CurveSet c = example2(0.3);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 25; ++i) {
    const Vec3 xi = Vec3(normal(rng), normal(rng), normal(rng)).normalized();
    const Eigen::Quaterniond q = Eigen::Quaterniond::UnitRandom();
    CurveSet turned = c;
    for (Curve& k : turned.components) {
      for (Vec3& p : k.points) p = q * p;
    }
    const ProjectionOutcome a = project(c, xi);
    const ProjectionOutcome b = project(turned, (q * xi).normalized());
    REQUIRE(a.regular() == b.regular());
    if (!a.regular()) continue;
    CHECK(a.diagram->signature() == b.diagram->signature());
    CHECK(jones(*a.diagram).jones_A == jones(*b.diagram).jones_A);
  }
}

TEST_CASE("central inversion mirrors every projection") {
  const CurveSet c = example2(0.0);
  CurveSet inverted = c;
  for (Curve& k : inverted.components) {
    for (Vec3& p : k.points) p = -p;
  }
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 25; ++i) {
    const Vec3 xi = Vec3(normal(rng), normal(rng), normal(rng)).normalized();
    const ProjectionOutcome a = project(c, xi);
    const ProjectionOutcome b = project(inverted, xi);
    REQUIRE(a.regular());
    REQUIRE(b.regular());
    CHECK(b.diagram->signature() == a.diagram->mirrored().signature());
    CHECK(jones(*b.diagram).jones_A == jones(*a.diagram).jones_A.inverted());
    // The opposite view gives the same class: both reflections cancel.
    const ProjectionOutcome back = project(c, -xi);
    REQUIRE(back.regular());
    CHECK(jones(*back.diagram).jones_A == jones(*a.diagram).jones_A);
  }
}
