#include "doctest.h"
#include "linkoid/poly.hpp"

using namespace linkoid;

namespace {
ExactPoly mono(std::int64_t c, int e) { return ExactPoly::monomial(Rational(c), e); }
}  // namespace

TEST_CASE("exact polynomials drop cancelled terms") {
  const ExactPoly p = mono(1, 2) + mono(3, -1);
  CHECK((p - p).is_zero());
  CHECK((p + mono(-3, -1)) == mono(1, 2));
  CHECK(p.coefficient(5) == Rational(0));
}

TEST_CASE("multiplication and inversion") {
  const ExactPoly d = loop_value();
  CHECK(d * d == mono(1, 4) + mono(2, 0) + mono(1, -4));
  CHECK(d.inverted() == d);
  CHECK(mono(2, 3).inverted() == mono(2, -3));
}

TEST_CASE("d_power matches repeated multiplication") {
  ExactPoly acc = ExactPoly::constant(1);
  for (int k = 0; k <= 12; ++k) {
    CHECK(d_power(k) == acc);
    acc = acc * loop_value();
  }
  CHECK_THROWS_AS(d_power(-1), std::domain_error);
}

TEST_CASE("writhe normalization") {
  const ExactPoly b = mono(-1, 4) + mono(-1, -4);
  // (-A^3)^2 * (-A^4 - A^-4)
  CHECK(writhe_normalize(b, -2) == mono(-1, 10) + mono(-1, 2));
  CHECK(writhe_normalize(b, 1) == mono(1, 1) + mono(1, -7));
}

TEST_CASE("t exponents in quarter units") {
  CHECK(TExponent::from_a_exponent(6).str() == "-3/2");
  CHECK(TExponent::from_a_exponent(-4).str() == "1");
  CHECK(TExponent::from_a_exponent(2).str() == "-1/2");
  CHECK(TExponent::parse("-3/2").a_exponent() == 6);
  CHECK(TExponent::parse("0.25").quarters == 1);
  CHECK_THROWS(TExponent::parse("1/3"));
  CHECK(TExponent{-4} < TExponent{2});
}

TEST_CASE("round trip through t") {
  const ExactPoly p = mono(-1, 10) + mono(-1, 2) + mono(3, -1);
  CHECK(from_t(to_t(p)) == p);
}

TEST_CASE("formatting") {
  CHECK(format(ExactPoly{}) == "0");
  CHECK(format(mono(-1, 4) + mono(-1, -4)) == "-A^4 - A^-4");
  CHECK(format(mono(-1, 4) + mono(-1, -4), Variable::t) == "-t^-1 - t");
  RealPoly r;
  r.add_term(6, -0.26);
  r.add_term(-2, 0.67);
  r.add_term(0, 0.001);
  CHECK(format(r, Variable::t) == "-0.26 t^(-3/2) + 0.67 t^(1/2)");
}

TEST_CASE("json round trip") {
  ExactPoly p = mono(-1, 10) + mono(-1, 2);
  p.add_term(3, Rational(1, 3));
  for (Variable v : {Variable::A, Variable::t}) CHECK(exact_poly_from_json(to_json(p, v)) == p);
  RealPoly r = to_real(p);
  const RealPoly back = real_poly_from_json(to_json(r, Variable::t));
  CHECK(approx_equal(back, r, 1e-12));
}

TEST_CASE("real polynomials prune tiny coefficients") {
  RealPoly r;
  r.add_term(1, 1e-14);
  CHECK(r.is_zero());
  CHECK(approx_equal(to_real(mono(1, 1)) + mono(-1, 1), RealPoly{}, 0.0));
}
