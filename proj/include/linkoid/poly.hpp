#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "json.hpp"

namespace linkoid {

using Rational = boost::rational<std::int64_t>;

// Coefficients below this magnitude are dropped from real-mode polynomials.
inline constexpr double kRealPruneThreshold = 1e-12;

namespace detail {

inline bool is_zero_coef(const Rational& c) { return c.numerator() == 0; }
inline bool is_zero_coef(double c) { return std::abs(c) < kRealPruneThreshold; }

}  // namespace detail

// Sparse Laurent polynomial in the bracket variable A. Only non-zero terms are
// stored, so two exact polynomials are equal iff their term maps are equal.
template <class Coef>
class LaurentPoly {
 public:
  using coefficient_type = Coef;
  using term_map = std::map<int, Coef>;

  LaurentPoly() = default;

  static LaurentPoly constant(Coef c) { return monomial(std::move(c), 0); }

  static LaurentPoly monomial(Coef c, int exponent) {
    LaurentPoly p;
    if (!detail::is_zero_coef(c)) p.terms_.emplace(exponent, std::move(c));
    return p;
  }

  static LaurentPoly from_terms(const term_map& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) {
      if (!detail::is_zero_coef(c)) p.terms_.emplace(e, c);
    }
    return p;
  }

  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coef coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  void add_term(int exponent, const Coef& c) {
    if (detail::is_zero_coef(c)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero_coef(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(const LaurentPoly& other) {
    *this = *this * other;
    return *this;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    }
    return out;
  }

  LaurentPoly scaled(const Coef& factor) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * factor);
    return out;
  }

  // Multiplication by A^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  // The substitution A -> A^-1.
  LaurentPoly inverted() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  term_map terms_;
};

using ExactPoly = LaurentPoly<Rational>;
using RealPoly = LaurentPoly<double>;

RealPoly to_real(const ExactPoly& p);

// Mixed arithmetic promotes to real coefficients.
RealPoly operator+(const ExactPoly& a, const RealPoly& b);
RealPoly operator+(const RealPoly& a, const ExactPoly& b);
RealPoly operator*(const ExactPoly& a, const RealPoly& b);
RealPoly operator*(const RealPoly& a, const ExactPoly& b);

// Per-coefficient comparison; absent terms count as zero.
bool approx_equal(const RealPoly& a, const RealPoly& b, double tol);
bool approx_equal(const RealPoly& a, const ExactPoly& b, double tol);

// d = -A^2 - A^-2, the value of a disjoint circle.
const ExactPoly& loop_value();

// d^k for k >= 0. A negative exponent means a state with neither closed loops
// nor segment cycles, which cannot arise from a well-formed diagram.
ExactPoly d_power(int k);

// (-A^3)^(-writhe) * p.
template <class Coef>
LaurentPoly<Coef> writhe_normalize(const LaurentPoly<Coef>& p, int writhe) {
  LaurentPoly<Coef> out = p.shifted(-3 * writhe);
  return (writhe % 2 == 0) ? out : -out;
}

// Exponent of t in quarter units: A^k corresponds to t^(-k/4).
struct TExponent {
  int quarters = 0;

  static TExponent from_a_exponent(int k) { return TExponent{-k}; }
  int a_exponent() const { return -quarters; }
  double value() const { return quarters / 4.0; }
  // Reduced "p/q" form, or "p" for integers.
  std::string str() const;
  static TExponent parse(const std::string& text);

  friend auto operator<=>(const TExponent&, const TExponent&) = default;
};

template <class Coef>
using TPoly = std::map<TExponent, Coef>;

template <class Coef>
TPoly<Coef> to_t(const LaurentPoly<Coef>& p) {
  TPoly<Coef> out;
  for (const auto& [e, c] : p.terms()) out.emplace(TExponent::from_a_exponent(e), c);
  return out;
}

template <class Coef>
LaurentPoly<Coef> from_t(const TPoly<Coef>& p) {
  typename LaurentPoly<Coef>::term_map terms;
  for (const auto& [e, c] : p) terms.emplace(e.a_exponent(), c);
  return LaurentPoly<Coef>::from_terms(terms);
}

enum class Variable { A, t };

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& text);

// Human-readable form ordered by ascending power of t (descending power of A),
// e.g. "-A^10 - A^2" or "-0.26 t^-3 + 1.49 t^-2 + 1.84 t^(-3/2)".
std::string format(const ExactPoly& p, Variable var = Variable::A);
std::string format(const RealPoly& p, Variable var = Variable::t, int decimals = 2);

// {"variable": "A"|"t", "mode": "exact"|"real", "terms": [{"exp": "p/q", "coef": ...}]}
// with terms in ascending exponent order. Exact coefficients are rational strings.
nlohmann::json to_json(const ExactPoly& p, Variable var = Variable::A);
nlohmann::json to_json(const RealPoly& p, Variable var = Variable::A);
ExactPoly exact_poly_from_json(const nlohmann::json& j);
RealPoly real_poly_from_json(const nlohmann::json& j);

}  // namespace linkoid
