#include "linkoid/poly.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <vector>

namespace linkoid {

RealPoly to_real(const ExactPoly& p) {
  RealPoly out;
  for (const auto& [e, c] : p.terms()) {
    out.add_term(e, static_cast<double>(c.numerator()) / static_cast<double>(c.denominator()));
  }
  return out;
}

RealPoly operator+(const ExactPoly& a, const RealPoly& b) { return to_real(a) + b; }
RealPoly operator+(const RealPoly& a, const ExactPoly& b) { return a + to_real(b); }
RealPoly operator*(const ExactPoly& a, const RealPoly& b) { return to_real(a) * b; }
RealPoly operator*(const RealPoly& a, const ExactPoly& b) { return a * to_real(b); }

bool approx_equal(const RealPoly& a, const RealPoly& b, double tol) {
  for (const auto& [e, c] : a.terms()) {
    if (std::abs(c - b.coefficient(e)) > tol) return false;
  }
  for (const auto& [e, c] : b.terms()) {
    if (std::abs(c - a.coefficient(e)) > tol) return false;
  }
  return true;
}

bool approx_equal(const RealPoly& a, const ExactPoly& b, double tol) {
  return approx_equal(a, to_real(b), tol);
}

const ExactPoly& loop_value() {
  static const ExactPoly d = [] {
    ExactPoly p;
    p.add_term(2, Rational(-1));
    p.add_term(-2, Rational(-1));
    return p;
  }();
  return d;
}

ExactPoly d_power(int k) {
  if (k < 0) throw std::domain_error("invalid state weight");
  // (-A^2 - A^-2)^k = (-1)^k sum_j C(k, j) A^(4j - 2k)
  ExactPoly out;
  std::int64_t binom = 1;
  const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
  for (int j = 0; j <= k; ++j) {
    out.add_term(4 * j - 2 * k, Rational(sign * binom));
    binom = binom * (k - j) / (j + 1);
  }
  return out;
}

std::string TExponent::str() const {
  const int g = std::gcd(quarters, 4);
  const int num = quarters / g;
  const int den = 4 / g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

TExponent TExponent::parse(const std::string& text) {
  if (text.find('.') != std::string::npos) {
    std::size_t pos = 0;
    double x = 0;
    try {
      x = std::stod(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    const double q = std::round(4 * x);
    if (pos != text.size() || !std::isfinite(x) || std::abs(4 * x - q) > 1e-9) {
      throw std::invalid_argument("t exponent is not a quarter integer: " + text);
    }
    return TExponent{static_cast<int>(q)};
  }
  const Rational r = parse_rational(text);
  const Rational q = r * 4;
  if (q.denominator() != 1) {
    throw std::invalid_argument("t exponent is not a quarter integer: " + text);
  }
  return TExponent{static_cast<int>(q.numerator())};
}

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  std::size_t pos = 0;
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const long long n = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    const std::string num_text = text.substr(0, slash);
    const std::string den_text = text.substr(slash + 1);
    const long long n = std::stoll(num_text, &pos);
    if (pos != num_text.size()) throw std::invalid_argument(text);
    const long long d = std::stoll(den_text, &pos);
    if (pos != den_text.size() || d == 0) throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

namespace {

// Power suffix for a variable; the exponent is an A-exponent.
std::string power_str(int a_exp, Variable var) {
  if (var == Variable::A) {
    if (a_exp == 1) return "A";
    return "A^" + std::to_string(a_exp);
  }
  const TExponent t = TExponent::from_a_exponent(a_exp);
  if (t.quarters == 4) return "t";
  const std::string s = t.str();
  if (s.find('/') != std::string::npos) return "t^(" + s + ")";
  return "t^" + s;
}

template <class Coef, class CoefFormatter>
std::string format_terms(const LaurentPoly<Coef>& p, Variable var, CoefFormatter&& fmt) {
  std::ostringstream out;
  bool first = true;
  // Descending A exponent is ascending t exponent.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const int e = it->first;
    auto [negative, magnitude, unit] = fmt(it->second);
    if (magnitude.empty()) continue;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << magnitude;
    } else if (unit) {
      out << power_str(e, var);
    } else {
      out << magnitude << (var == Variable::t ? " " : "*") << power_str(e, var);
    }
  }
  if (first) return "0";
  return out.str();
}

}  // namespace

std::string format(const ExactPoly& p, Variable var) {
  return format_terms(p, var, [](const Rational& c) {
    const Rational mag = c < 0 ? -c : c;
    return std::tuple<bool, std::string, bool>{c < 0, rational_str(mag), mag == Rational(1)};
  });
}

std::string format(const RealPoly& p, Variable var, int decimals) {
  return format_terms(p, var, [decimals](double c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, std::abs(c));
    std::string mag = buf;
    // Terms that vanish at the displayed precision are omitted.
    if (mag.find_first_not_of("0.") == std::string::npos) mag.clear();
    return std::tuple<bool, std::string, bool>{c < 0, mag, false};
  });
}

namespace {

std::string exponent_str(int a_exp, Variable var) {
  if (var == Variable::A) return std::to_string(a_exp);
  return TExponent::from_a_exponent(a_exp).str();
}

int parse_exponent(const std::string& text, Variable var) {
  if (var == Variable::A) {
    const Rational r = parse_rational(text);
    if (r.denominator() != 1) throw std::invalid_argument("A exponent must be an integer: " + text);
    return static_cast<int>(r.numerator());
  }
  return TExponent::parse(text).a_exponent();
}

Variable parse_variable(const nlohmann::json& j) {
  const std::string v = j.at("variable").get<std::string>();
  if (v == "A") return Variable::A;
  if (v == "t") return Variable::t;
  throw std::invalid_argument("unknown polynomial variable: " + v);
}

// Terms are emitted in ascending order of the exponent of the chosen variable.
template <class Coef, class CoefToJson>
nlohmann::json poly_json(const LaurentPoly<Coef>& p, Variable var, const char* mode,
                         CoefToJson&& coef) {
  nlohmann::json terms = nlohmann::json::array();
  auto emit = [&](int e, const Coef& c) {
    terms.push_back({{"exp", exponent_str(e, var)}, {"coef", coef(c)}});
  };
  if (var == Variable::A) {
    for (const auto& [e, c] : p.terms()) emit(e, c);
  } else {
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) emit(it->first, it->second);
  }
  return {{"variable", var == Variable::A ? "A" : "t"}, {"mode", mode}, {"terms", terms}};
}

}  // namespace

nlohmann::json to_json(const ExactPoly& p, Variable var) {
  return poly_json(p, var, "exact", [](const Rational& c) { return rational_str(c); });
}

nlohmann::json to_json(const RealPoly& p, Variable var) {
  return poly_json(p, var, "real", [](double c) { return c; });
}

ExactPoly exact_poly_from_json(const nlohmann::json& j) {
  const Variable var = parse_variable(j);
  ExactPoly out;
  for (const auto& term : j.at("terms")) {
    const int e = parse_exponent(term.at("exp").get<std::string>(), var);
    const auto& c = term.at("coef");
    if (c.is_string()) {
      out.add_term(e, parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      out.add_term(e, Rational(c.get<std::int64_t>()));
    } else {
      throw std::invalid_argument("exact polynomial has a non-rational coefficient");
    }
  }
  return out;
}

RealPoly real_poly_from_json(const nlohmann::json& j) {
  const Variable var = parse_variable(j);
  RealPoly out;
  for (const auto& term : j.at("terms")) {
    const int e = parse_exponent(term.at("exp").get<std::string>(), var);
    const auto& c = term.at("coef");
    if (c.is_string()) {
      const Rational r = parse_rational(c.get<std::string>());
      out.add_term(e, static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
    } else {
      out.add_term(e, c.get<double>());
    }
  }
  return out;
}

}  // namespace linkoid
