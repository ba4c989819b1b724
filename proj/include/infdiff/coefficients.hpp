#ifndef INFDIFF_COEFFICIENTS_HPP
#define INFDIFF_COEFFICIENTS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "infdiff/combinatorics.hpp"
#include "infdiff/mnpoly.hpp"

namespace infdiff {

// Closed-form coefficient families of the infinite-order equations.  Order
// zero may depend on the degree n; every higher order is independent of n.

enum class CoefficientKind { LaguerreA, LaguerreBStar, LaguerreCStar, Alpha0Order10, JacobiB, JacobiC };

/// Coefficients a_i(x) of the point-mass Laguerre equation
///   M sum a_i y^(i) + x y'' + (alpha+1-x) y' + n y = 0.
/// a_0 = C(n+alpha+1, n-1); for i >= 1
///   a_i = (1/i!) sum_{j=1}^i (-1)^{i+j+1} C(alpha+1, j-1) C(alpha+2, i-j) (alpha+3)_{i-j} x^j.
inline Poly coeff_laguerre_a(const Rational& alpha, std::int64_t i, std::int64_t n) {
  if (i == 0) return Poly::constant(gen_binomial(Rational(n) + alpha + Rational(1), n - 1));
  std::vector<Rational> c(static_cast<std::size_t>(i) + 1);
  const Rational inv = Rational(1) / factorial(i);
  for (std::int64_t j = 1; j <= i; ++j) {
    c[static_cast<std::size_t>(j)] = sign_power(i + j + 1) * gen_binomial(alpha + Rational(1), j - 1) *
                                      gen_binomial(alpha + Rational(2), i - j) *
                                      pochhammer(alpha + Rational(3), i - j) * inv;
  }
  return Poly(std::move(c));
}

/// b_i^*(alpha, x) = (1/i!) sum_{j=0}^i (-1)^j C(i,j) (alpha+1)_{i-j} x^j
inline Poly coeff_laguerre_bstar(const Rational& alpha, std::int64_t i) {
  std::vector<Rational> c(static_cast<std::size_t>(i) + 1);
  const Rational inv = Rational(1) / factorial(i);
  for (std::int64_t j = 0; j <= i; ++j)
    c[static_cast<std::size_t>(j)] =
        sign_power(j) * gen_binomial(Rational(i), j) * pochhammer(alpha + Rational(1), i - j) * inv;
  return Poly(std::move(c));
}

/// c_i^*(x) = (-1)^i x^i / i!  (the Taylor shift that evaluates at 0).
inline Poly coeff_laguerre_cstar(const Rational& /*alpha*/, std::int64_t i) {
  return Poly::monomial(sign_power(i) / factorial(i), static_cast<std::size_t>(i));
}

/// Trivial symmetric-Jacobi family: b_0 = (1-(-1)^n)/2, b_i = 2^{i-1} (-x)^i / i!.
inline Poly coeff_jacobi_b(std::int64_t n, std::int64_t i) {
  if (i == 0) return Poly::constant(n % 2 == 0 ? Rational(0) : Rational(1));
  return Poly::monomial(pow(Rational(2), static_cast<unsigned>(i - 1)) * sign_power(i) / factorial(i),
                        static_cast<std::size_t>(i));
}

/// c_i^*(alpha, x) = (2^i/i!) sum_{k=0}^{i-2} C(alpha+1, i-k-2) C(i-2alpha-5, k) ((1-x)/2)^k,
/// with c_0^* and c_1^* zero.
inline Poly coeff_jacobi_cstar(const Rational& alpha, std::int64_t i) {
  if (i < 2) return {};
  const Poly half({Rational(1, 2), Rational(-1, 2)});
  const Rational lead = pow(Rational(2), static_cast<unsigned>(i)) / factorial(i);
  Poly r;
  Poly power = Poly::constant(Rational(1));
  for (std::int64_t k = 0; k <= i - 2; ++k) {
    const Rational c =
        gen_binomial(alpha + Rational(1), i - k - 2) * gen_binomial(Rational(i) - Rational(2) * alpha - Rational(5), k);
    if (!c.is_zero()) r += power * (lead * c);
    power *= half;
  }
  return r;
}

/// Symmetric Jacobi equation
///   M sum c_i y^(i) + (1-x^2) y'' - 2(alpha+1) x y' + n(n+2alpha+1) y = 0:
/// c_0 = 4(2alpha+3) C(n+2alpha+2, n-2), c_i = (2alpha+3)(1-x^2) c_i^*(x).
inline Poly coeff_jacobi_c(const Rational& alpha, std::int64_t i, std::int64_t n) {
  const Rational s = Rational(2) * alpha + Rational(3);
  if (i == 0) return Poly::constant(Rational(4) * s * gen_binomial(Rational(n) + Rational(2) * alpha + Rational(2), n - 2));
  return Poly({Rational(1), Rational(0), Rational(-1)}) * coeff_jacobi_cstar(alpha, i) * s;
}

/// Explicit alpha = 0 Sobolev-Laguerre equation of formal order 10, entered
/// coefficient by coefficient.  Kept as a literal table (not generated) so
/// it can act as an independent reference.
struct Alpha0Order10Table {
  /// coefficients[key][i] for i >= 1; index 0 unused.
  std::map<BlockKey, std::vector<Poly>> coefficients;

  /// Order-zero coefficient of each block at degree n:
  /// (1/120) n [MN (n^2-1)(n+2)(2n+1) + 10 N n (n^2-1) + 60 M (n+1) + 120].
  static Rational order_zero(BlockKey key, std::int64_t n) {
    const Rational nr(n);
    if (key == BlockKey{0, 0}) return nr;
    if (key == BlockKey{1, 0}) return nr * (nr + Rational(1)) / Rational(2);
    if (key == BlockKey{0, 1}) return nr * nr * (nr * nr - Rational(1)) / Rational(12);
    if (key == BlockKey{1, 1})
      return nr * (nr * nr - Rational(1)) * (nr + Rational(2)) * (Rational(2) * nr + Rational(1)) / Rational(120);
    return Rational(0);
  }
};

inline const Alpha0Order10Table& alpha0_order10_table() {
  static const Alpha0Order10Table table = [] {
    using R = Rational;
    auto p = [](std::initializer_list<std::int64_t> c, R scale) {
      std::vector<R> v;
      for (auto x : c) v.emplace_back(x);
      return Poly(std::move(v)) * scale;
    };
    Alpha0Order10Table t;
    auto& base = t.coefficients[{0, 0}];
    base.resize(3);
    base[1] = p({1, -1}, R(1));
    base[2] = p({0, 1}, R(1));

    auto& m = t.coefficients[{1, 0}];
    m.resize(5);
    m[1] = p({0, -1}, R(1));
    m[2] = p({0, 6, -1}, R(1, 2));
    m[3] = p({0, -2, 1}, R(1));
    m[4] = p({0, 0, -1}, R(1, 2));

    auto& nb = t.coefficients[{0, 1}];
    nb.resize(9);
    nb[2] = p({2, 0, -1}, R(1, 2));
    nb[3] = p({-6, -2, 9, -1}, R(1, 2));
    nb[4] = p({24, 36, -150, 34, -1}, R(1, 12));
    nb[5] = p({0, -12, 81, -33, 2}, R(1, 6));
    nb[6] = p({0, 0, -10, 9, -1}, R(1, 2));
    nb[7] = p({0, 0, 0, 4, -1}, R(-1, 3));
    nb[8] = p({0, 0, 0, 0, 1}, R(-1, 12));

    auto& mn = t.coefficients[{1, 1}];
    mn.resize(11);
    mn[2] = p({0, 0, -1}, R(1, 2));
    mn[3] = p({0, 0, 15, -2}, R(1, 3));
    mn[4] = p({0, 0, -420, 120, -5}, R(1, 24));
    mn[5] = p({0, 0, 1680, -840, 75, -1}, R(1, 60));
    mn[6] = p({0, 0, -252, 224, -35, 1}, R(1, 12));
    mn[7] = p({0, 0, 36, -72, 20, -1}, R(1, 6));
    mn[8] = p({0, 0, 0, 72, -45, 4}, R(1, 24));
    mn[9] = p({0, 0, 0, 0, 5, -1}, R(1, 12));
    mn[10] = p({0, 0, 0, 0, 0, 1}, R(1, 60));
    return t;
  }();
  return table;
}

}  // namespace infdiff

#endif  // INFDIFF_COEFFICIENTS_HPP
