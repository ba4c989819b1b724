#ifndef INFDIFF_POLY_HPP
#define INFDIFF_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infdiff/rational.hpp"

namespace infdiff {

/// Dense univariate polynomial in x over the rationals.
///
/// Coefficients are indexed by power and kept normalized: no trailing
/// zeros, so the zero polynomial has no coefficients at all.
class Poly {
public:
  Poly() = default;
  Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Rational& c) { return Poly({c}); }
  static Poly x() { return Poly({Rational(0), Rational(1)}); }
  static Poly monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return Poly(std::move(v));
  }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return c_.size(); }
  [[nodiscard]] std::span<const Rational> coefficients() const { return c_; }
  /// Coefficient of x^k (zero past the degree).
  [[nodiscard]] Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  [[nodiscard]] Rational evaluate(const Rational& at) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& a : c_) a *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) = default;

  /// Multiplication by x^k.
  [[nodiscard]] Poly shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Rational> v(k);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// order-th derivative.
inline Poly derivative(const Poly& p, std::size_t order = 1) {
  if (order == 0) return p;
  if (p.size() <= order) return {};
  std::vector<Rational> v(p.size() - order);
  for (std::size_t k = order; k < p.size(); ++k) {
    Rational f(1);
    for (std::size_t j = 0; j < order; ++j) f *= Rational(static_cast<std::int64_t>(k - j));
    v[k - order] = p[k] * f;
  }
  return Poly(std::move(v));
}

/// p(-x)
inline Poly reflect(const Poly& p) {
  std::vector<Rational> v(p.coefficients().begin(), p.coefficients().end());
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return Poly(std::move(v));
}

/// p(a + b x)
inline Poly compose_affine(const Poly& p, const Rational& a, const Rational& b) {
  const Poly inner({a, b});
  Poly r;
  for (auto k = p.size(); k-- > 0;) r = r * inner + Poly::constant(p[k]);
  return r;
}

inline Poly pow(const Poly& p, unsigned k) {
  Poly r = Poly::constant(Rational(1));
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

/// Canonical text form in ascending powers, e.g. "1 - 2*x + 1/2*x^2".
inline std::string to_string(const Poly& p, std::string_view var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Rational& c = p.coefficients()[k];
    if (c.is_zero()) continue;
    const Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (mag != Rational(1)) out += mag.str() + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

/// Inverse of to_string; also tolerates terms in any order and repeated
/// powers.  Throws std::invalid_argument on malformed input.
inline Poly parse_poly(std::string_view text, char var = 'x') {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_poly: empty input");
  Poly result;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_poly: " + why + " in '" + std::string(text) + "'");
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected sign");
    }
    const std::size_t end = s.find_first_of("+-", pos + 1);
    const std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty()) fail("empty term");

    Rational coeff(1);
    std::size_t power = 0;
    const auto vpos = term.find(var);
    if (vpos == std::string::npos) {
      coeff = Rational::parse(term);
    } else {
      if (vpos > 0) {
        if (vpos < 2 || term[vpos - 1] != '*') fail("expected '*' before variable");
        coeff = Rational::parse(term.substr(0, vpos - 1));
      }
      power = 1;
      const std::string rest = term.substr(vpos + 1);
      if (!rest.empty()) {
        if (rest[0] != '^' || rest.size() < 2) fail("bad exponent");
        for (std::size_t i = 1; i < rest.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(rest[i]))) fail("bad exponent");
        power = std::stoul(rest.substr(1));
      }
    }
    result += Poly::monomial(sign < 0 ? -coeff : coeff, power);
  }
  return result;
}

}  // namespace infdiff

#endif  // INFDIFF_POLY_HPP
