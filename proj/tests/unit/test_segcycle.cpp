#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "linkoid/segcycle.hpp"
#include "oracles.hpp"

using namespace linkoid;

TEST_CASE("pairing validation") {
  CHECK_THROWS(Pairing(std::vector<int>{1, 2}));     // fixed points
  CHECK_THROWS(Pairing(std::vector<int>{2, 3, 1}));  // not an involution
  CHECK_NOTHROW(Pairing(std::vector<int>{2, 1}));
  CHECK_THROWS(head_leg_pairing(0));
}

TEST_CASE("cycle notation") {
  const Pairing j = Pairing::parse("(1 3)(2 6)(4 5)");
  CHECK(j(1) == 3);
  CHECK(j(6) == 2);
  CHECK(j.to_string() == "(1 3)(2 6)(4 5)");
  CHECK_THROWS(Pairing::parse("(1 3)(2 4"));
  CHECK_THROWS(Pairing::parse("(1 3)(3 2)"));
}

TEST_CASE("segment cycles of small pairings") {
  const Pairing hl = head_leg_pairing(3);
  CHECK(cycle_count(hl, hl) == 3);
  const Pairing j = Pairing::parse("(1 3)(2 6)(4 5)");
  const auto parts = segment_cycles(j, hl);
  CHECK(parts.size() == 1);
  CHECK(parts.classes[0] == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(orbit(1, j, hl) == std::vector<int>{1, 4, 6});
  CHECK(orbit(2, j, hl) == std::vector<int>{2, 3, 5});
  const Pairing hl2 = head_leg_pairing(2);
  const Pairing j2 = Pairing::parse("(1 3)(2 4)");
  CHECK(orbit(1, j2, hl2) == std::vector<int>{1, 4});
  CHECK(orbit(2, j2, hl2) == std::vector<int>{2, 3});
  CHECK(orbit(3, hl2, hl2) == std::vector<int>{3});
  CHECK(cycle_count(Pairing::parse("(1 4)(2 3)(5 6)"), hl) == 2);
}

TEST_CASE("decorated circle alternates J and HL") {
  const Pairing hl = head_leg_pairing(2);
  const Pairing j = Pairing::parse("(1 3)(2 4)");
  CHECK(decorated_circle(1, j, hl) == std::vector<int>{1, 3, 4, 2});
}

TEST_CASE("fast count agrees with orbit closure on all involutions up to n = 4") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> hl(static_cast<std::size_t>(2 * n));
    for (int a = 1; a <= 2 * n; ++a) hl[a - 1] = a % 2 ? a + 1 : a - 1;
    // Enumerate matchings recursively.
    std::vector<int> image(static_cast<std::size_t>(2 * n), 0);
    int checked = 0;
    auto rec = [&](auto&& self) -> void {
      const auto it = std::find(image.begin(), image.end(), 0);
      if (it == image.end()) {
        const int expect = oracle::orbit_closure_count(image, hl);
        CHECK(count_segment_cycles(image) == expect);
        CHECK(cycle_count(Pairing(image), head_leg_pairing(n)) == expect);
        ++checked;
        return;
      }
      const int a = static_cast<int>(it - image.begin()) + 1;
      for (int b = a + 1; b <= 2 * n; ++b) {
        if (image[b - 1]) continue;
        image[a - 1] = b;
        image[b - 1] = a;
        self(self);
        image[a - 1] = image[b - 1] = 0;
      }
    };
    rec(rec);
    int expected = 1;
    for (int k = 2 * n - 1; k > 0; k -= 2) expected *= k;
    CHECK(checked == expected);
  }
}
