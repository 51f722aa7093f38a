#include <random>

#include "doctest.h"
#include "linkoid/braid.hpp"
#include "linkoid/diagram_io.hpp"
#include "linkoid/moves.hpp"
#include "linkoid/simplify.hpp"
#include "oracles.hpp"

using namespace linkoid;

namespace {
const std::string data_dir = LINKOID_DATA_DIR;
}

TEST_CASE("fixture files parse to the braid-built diagram") {
  const Diagram text = read_diagram_file(data_dir + "/fig4_hopf_linkoid.pd");
  const Diagram json = read_diagram_file(data_dir + "/fig4_hopf_linkoid.json");
  const Diagram braid = from_braid(2, {-1, -1});
  CHECK(text == braid.canonical());
  CHECK(json == text);
  CHECK(text.crossing_count() == 2);
  CHECK(text.writhe() == -2);
  CHECK(read_diagram_file(data_dir + "/hopf_link.pd").is_link());
  CHECK(read_diagram_file(data_dir + "/trivial3.pd") == Diagram::trivial(3));
}

TEST_CASE("print then parse gives the canonical form") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const Diagram d = oracle::random_diagram(rng, 4, 8, i % 3);
    const Diagram back = parse_diagram(print_diagram(d));
    CHECK(back == d.canonical());
    CHECK(diagram_from_json(diagram_to_json(d)) == d.canonical());
    CHECK(d.canonical().canonical() == d.canonical());
    CHECK(back.signature() == d.signature());
  }
}

TEST_CASE("parser rejects malformed input") {
  const std::string crossing = "crossing X1: (a1 a3 a2 a4)\n";
  CHECK_THROWS_AS(parse_diagram("open 1: a1\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_diagram("linkoid v1\nopen 1: a1 X1.u a2\nopen 2: a3 X1.o a4\n"
                                     "crossing X1: (a1 a3 a2 a9)\n"),
                       doctest::Contains("dangling"), ParseError);
  CHECK_THROWS_WITH_AS(parse_diagram("linkoid v1\nopen 1: a1 X1.u a2\nopen 2: a3 X1.o a4\n"
                                     "crossing X1: (a2 a3 a1 a4)\n"),
                       doctest::Contains("orientation mismatch"), ParseError);
  CHECK_THROWS_WITH_AS(parse_diagram("linkoid v1\nopen 1: a1 X1.u a2\nopen 2: a3 X1.o a4\n"
                                     "crossing X1: (a1 a4 a2 a3) sign=-1\n"),
                       doctest::Contains("disagrees"), ParseError);
  CHECK_THROWS_AS(parse_diagram("linkoid v1\nopen 1: a1 X1.u a1\n" + crossing), ParseError);
  CHECK_THROWS_AS(parse_diagram("linkoid v1\nopen 1: a1 X1.u a2 X1.u a3\n" + crossing), ParseError);
  CHECK_THROWS_AS(parse_diagram("linkoid v1\nbogus line\n"), ParseError);
  // Explicit labels must keep legs odd and heads even.
  CHECK_THROWS_AS(parse_diagram("linkoid v1\nopen 1 (2,1): a1\n"), ParseError);
  CHECK_NOTHROW(parse_diagram("linkoid v1 # header\n\n# nothing else\nopen 1 (1,2): a1\n"));
}

TEST_CASE("crossing data that cannot be drawn on the sphere is rejected") {
  // Gauss word 1 2 1 2 violates the even-interlacing condition.
  const std::vector<Passage> ps{{0, Level::over}, {1, Level::over}, {0, Level::under}, {1, Level::under}};
  CHECK_THROWS_AS(Diagram({}, {ClosedComponent{ps}}, {1, 1}), DiagramError);
  CHECK_THROWS_AS(Diagram({}, {ClosedComponent{ps}}, {1, -1}), DiagramError);
  CHECK_THROWS_AS(Diagram({OpenComponent{1, 2, {{0, Level::over}}}}, {}, {1}), DiagramError);
  CHECK_THROWS_AS(Diagram({OpenComponent{1, 2, {}}}, {}, {0}), DiagramError);
}

TEST_CASE("states of the Hopf-type linkoid") {
  const Diagram d = from_braid(2, {-1, -1});
  std::map<std::string, int> pairings;
  const auto visited = for_each_state(d, [&](const Smoothing&, const StateResolution& r) {
    ++pairings[r.pairing.to_string()];
  });
  CHECK(visited == 4);
  CHECK(pairings["(1 3)(2 4)"] == 3);
  CHECK(pairings["(1 2)(3 4)"] == 1);
  const auto aa = resolve(d, {Smooth::A, Smooth::A});
  CHECK(aa.sigma == 2);
  CHECK(aa.circ == 1);
  CHECK_THROWS(resolve(d, {Smooth::A}));
  CHECK_THROWS_AS(for_each_state(d, [](const Smoothing&, const StateResolution&) {}, 1), CrossingCapExceeded);
}

TEST_CASE("faces") {
  CHECK(face_structure(Diagram::trivial(1)).faces.size() == 1);
  CHECK(face_structure(Diagram::trivial(3)).connected_pieces == 3);
  // Clasp: two crossings on two strands bound one bigon plus the outside.
  CHECK(face_structure(from_braid(2, {-1, -1})).faces.size() == 2);
}

TEST_CASE("switching and mirroring") {
  const Diagram d = from_braid(3, {1, -2, 1});
  const Diagram s = switch_crossing(d, 1);
  CHECK(s.sign(1) == 1);
  CHECK(switch_crossing(s, 1) == d);
  CHECK(d.mirrored().writhe() == -d.writhe());
  CHECK(d.mirrored().mirrored() == d);
  CHECK_THROWS(switch_crossing(d, 3));
}

TEST_CASE("oriented smoothing keeps endpoint labels") {
  const Diagram hopf = from_braid(2, {-1, -1});
  const Diagram z = oriented_smoothing(hopf, 0);
  CHECK(z.crossing_count() == 1);
  CHECK(z.open_count() == 2);
  int legs = 0;
  for (const auto& c : z.open_components()) legs += c.leg;
  CHECK(legs == 4);
  // A self-crossing of a closed curve splits it in two.
  const Diagram trefoil = braid_closure(2, {1, 1, 1});
  CHECK(oriented_smoothing(trefoil, 0).closed_count() == 2);
  // Two closed components merge.
  CHECK(oriented_smoothing(braid_closure(2, {1, 1}), 0).closed_count() == 1);
}

TEST_CASE("kinks in every orientation are planar and simplify away") {
  const Diagram base = from_braid(3, {1, -2});
  for (int sign : {1, -1}) {
    for (bool over_first : {false, true}) {
      const Diagram k = add_kink(base, 1, 1, sign, over_first);
      CHECK(k.crossing_count() == 3);
      const SimplifyResult r = simplify(k);
      CHECK(r.kinks_removed == 1);
      CHECK(r.twist == sign);
      CHECK(r.diagram.canonical() == base.canonical());
    }
  }
  CHECK_THROWS(add_kink(base, 7, 0, 1, true));
  CHECK_THROWS(add_kink(base, 0, 9, 1, true));
  CHECK_THROWS(add_kink(base, 0, 0, 2, true));
}

TEST_CASE("bigons from cancelling generators simplify away") {
  const SimplifyResult r = simplify(from_braid(3, {2, 1, -1, -2}));
  CHECK(r.diagram.crossing_count() == 0);
  CHECK(r.bigons_removed == 2);
  CHECK(r.twist == 0);
  // A clasp is not a reducible bigon.
  CHECK(simplify(from_braid(2, {-1, -1})).diagram.crossing_count() == 2);
}

TEST_CASE("braid builder") {
  CHECK_THROWS(from_braid(0, {}));
  CHECK_THROWS(from_braid(2, {2}));
  CHECK_THROWS(from_braid(2, {0}));
  CHECK_THROWS(from_braid(2, {1}, {3}));
  const Diagram trefoil = braid_closure(2, {1, 1, 1});
  CHECK(trefoil.closed_count() == 1);
  CHECK(trefoil.writhe() == 3);
  const Diagram partly = from_braid(3, {1, 2}, {3});
  CHECK(partly.open_count() == 2);
  CHECK(partly.closed_count() == 0);
}

TEST_CASE("canonical form ignores closed-component order and starting point") {
  const Diagram d = braid_closure(3, {1, 1, -2, -2});
  auto closed = d.closed_components();
  std::reverse(closed.begin(), closed.end());
  std::rotate(closed[0].passages.begin(), closed[0].passages.begin() + 1, closed[0].passages.end());
  const Diagram e(d.open_components(), closed, d.signs());
  CHECK(e.signature() == d.signature());
}
