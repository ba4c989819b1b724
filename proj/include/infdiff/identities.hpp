#ifndef INFDIFF_IDENTITIES_HPP
#define INFDIFF_IDENTITIES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "infdiff/families.hpp"
#include "infdiff/hyper.hpp"

namespace infdiff {

// Exact coefficient identities.  Every check returns a CheckResult with
// exact = true and the two sides rendered canonically.

namespace detail {
inline CheckResult exact_poly(std::string name, const Poly& lhs, const Poly& rhs) {
  CheckResult r;
  r.name = std::move(name);
  r.exact = true;
  r.lhs = to_string(lhs);
  r.rhs = to_string(rhs);
  r.status = lhs == rhs ? CheckStatus::Pass : CheckStatus::Mismatch;
  return r;
}

inline CheckResult exact_value(std::string name, const Rational& lhs, const Rational& rhs) {
  CheckResult r;
  r.name = std::move(name);
  r.exact = true;
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.difference = (lhs - rhs).to_double();
  r.status = lhs == rhs ? CheckStatus::Pass : CheckStatus::Mismatch;
  return r;
}

inline std::int64_t require_nonneg_integer(const Rational& alpha, const char* who) {
  if (!alpha.is_nonneg_integer()) throw std::invalid_argument(std::string(who) + ": alpha must be a nonnegative integer");
  return alpha.to_int();
}
}  // namespace detail

/// For integer alpha >= 0:
///  - a_i = 0 for 2alpha+4 < i <= 2alpha+4+extra,
///  - sum_{i=1}^{2alpha+4} a_i = 0 and sum i a_i = (-1)^{alpha+1} x,
///  - sum_{i>=k} C(i,k) a_i(x) = (-1)^{alpha+k} a_k(-x) for k = 1..2alpha+4.
inline std::vector<CheckResult> thm2_exact(const Rational& alpha, std::int64_t extra = 4) {
  const std::int64_t a = detail::require_nonneg_integer(alpha, "thm2_exact");
  const std::int64_t top = 2 * a + 4;
  const std::string tag = " alpha=" + alpha.str();
  std::vector<Poly> coeff(static_cast<std::size_t>(top + extra) + 1);
  for (std::int64_t i = 1; i <= top + extra; ++i) coeff[static_cast<std::size_t>(i)] = coeff_laguerre_a(alpha, i, 0);

  std::vector<CheckResult> out;
  bool any_beyond = false;
  for (std::int64_t i = top + 1; i <= top + extra; ++i) any_beyond |= !coeff[static_cast<std::size_t>(i)].is_zero();
  {
    CheckResult r;
    r.name = "a_i vanish above order 2alpha+4" + tag;
    r.exact = true;
    r.lhs = any_beyond ? "nonzero" : "0";
    r.rhs = "0";
    r.status = any_beyond ? CheckStatus::Mismatch : CheckStatus::Pass;
    out.push_back(r);
  }
  Poly sum, weighted;
  for (std::int64_t i = 1; i <= top; ++i) {
    sum += coeff[static_cast<std::size_t>(i)];
    weighted += coeff[static_cast<std::size_t>(i)] * Rational(i);
  }
  out.push_back(detail::exact_poly("sum a_i" + tag, sum, Poly{}));
  out.push_back(detail::exact_poly("sum i*a_i" + tag, weighted, Poly::monomial(sign_power(a + 1), 1)));
  for (std::int64_t k = 1; k <= top; ++k) {
    Poly lhs;
    for (std::int64_t i = k; i <= top; ++i) lhs += coeff[static_cast<std::size_t>(i)] * gen_binomial(Rational(i), k);
    out.push_back(detail::exact_poly("binomial transform k=" + std::to_string(k) + tag, lhs,
                                     reflect(coeff[static_cast<std::size_t>(k)]) * sign_power(a + k)));
  }
  return out;
}

/// For n >= 1 and k = 0, 1, 2:
///   sum_i b_i^* D^{i+k} L_n^{(alpha)} = (-n)_k / (n Gamma(k)),
///   sum_i c_i^* D^{i+k} L_n^{(alpha)} = C(n+alpha, n) (-n)_k / (alpha+1)_k.
inline std::vector<CheckResult> thm3_observations(const Rational& alpha, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("thm3_observations: n must be >= 1");
  const Poly L = laguerre_classical(alpha, n);
  std::vector<Poly> d{L};
  for (std::int64_t i = 1; i <= n + 2; ++i) d.push_back(derivative(d.back()));
  std::vector<CheckResult> out;
  const std::string tag = " alpha=" + alpha.str() + " n=" + std::to_string(n);
  for (std::int64_t k = 0; k <= 2; ++k) {
    Poly sb, sc;
    for (std::int64_t i = 0; i + k <= n; ++i) {
      const Poly& dk = d[static_cast<std::size_t>(i + k)];
      sb += coeff_laguerre_bstar(alpha, i) * dk;
      sc += coeff_laguerre_cstar(alpha, i) * dk;
    }
    const Rational nk = pochhammer(Rational(-n), k);
    out.push_back(detail::exact_poly("bstar observation k=" + std::to_string(k) + tag, sb,
                                     Poly::constant(nk * reciprocal_gamma_ratio(k) / Rational(n))));
    out.push_back(detail::exact_poly("cstar observation k=" + std::to_string(k) + tag, sc,
                                     Poly::constant(gen_binomial(Rational(n) + alpha, n) * nk /
                                                    pochhammer(alpha + Rational(1), k))));
  }
  return out;
}

/// The two scalar equations the symmetric-Jacobi coefficients a_i := c_i satisfy:
///   sum c_i D^i P = (4/(2alpha+1)) C(n+2alpha, n) P'',
///   sum i c_i D^i P + x sum c_i D^{i+1} P = 4 C(n+2alpha+1, n-1) P'',
/// with P = P_n^{(alpha,alpha)}.
inline std::vector<CheckResult> jacobi_functional_equations(const Rational& alpha, std::int64_t n) {
  const Poly P = jacobi_classical(alpha, alpha, n);
  std::vector<Poly> d{P};
  for (std::int64_t i = 1; i <= n + 1; ++i) d.push_back(derivative(d.back()));
  Poly first, second;
  for (std::int64_t i = 0; i <= n; ++i) {
    const Poly c = coeff_jacobi_c(alpha, i, n);
    if (c.is_zero()) continue;
    first += c * d[static_cast<std::size_t>(i)];
    second += c * d[static_cast<std::size_t>(i)] * Rational(i) + Poly::x() * c * d[static_cast<std::size_t>(i + 1)];
  }
  const Poly& d2 = n >= 2 ? d[2] : Poly{};
  const Rational two_a = Rational(2) * alpha;
  const Rational k1 = Rational(4) * detail::binomial_over(two_a + Rational(1), n);
  const Rational k2 = Rational(4) * gen_binomial(Rational(n) + two_a + Rational(1), n - 1);
  const std::string tag = " alpha=" + alpha.str() + " n=" + std::to_string(n);
  return {detail::exact_poly("functional equation 1" + tag, first, d2 * k1),
          detail::exact_poly("functional equation 2" + tag, second, d2 * k2)};
}

/// 2F1(-i+1, alpha+5/2-i; 1/2; 1) = (-alpha-2+i)_{i-1} / (1/2)_{i-1} and
/// 2F1(-i+1, alpha+5/2-i; 3/2; 1) = (-alpha-1+i)_{i-1} / (3/2)_{i-1}.
inline std::vector<CheckResult> gauss_2f1_identities(const Rational& alpha, std::int64_t i) {
  if (i < 1) throw std::invalid_argument("gauss_2f1_identities: i must be >= 1");
  const Rational ir(i), one(1), half(1, 2), three_half(3, 2);
  const Rational b = alpha + Rational(5, 2) - ir;
  const std::string tag = " alpha=" + alpha.str() + " i=" + std::to_string(i);
  const Rational lhs1 = hyp_terminating({{one - ir, b}, {half}, one});
  const Rational rhs1 = pochhammer(-alpha - Rational(2) + ir, i - 1) / pochhammer(half, i - 1);
  const Rational lhs2 = hyp_terminating({{one - ir, b}, {three_half}, one});
  const Rational rhs2 = pochhammer(-alpha - one + ir, i - 1) / pochhammer(three_half, i - 1);
  return {detail::exact_value("2F1 lower 1/2" + tag, lhs1, rhs1), detail::exact_value("2F1 lower 3/2" + tag, lhs2, rhs2)};
}

/// For integer alpha >= 0 the symmetric-Jacobi coefficients c_i vanish for
/// 2alpha+4 < i <= 2alpha+4+extra while c_{2alpha+4} does not.
inline CheckResult jacobi_c_formal_order(const Rational& alpha, std::int64_t extra = 6) {
  const std::int64_t a = detail::require_nonneg_integer(alpha, "jacobi_c_formal_order");
  const std::int64_t top = 2 * a + 4;
  std::int64_t highest = 0;
  for (std::int64_t i = 1; i <= top + extra; ++i)
    if (!coeff_jacobi_c(alpha, i, 0).is_zero()) highest = i;
  CheckResult r;
  r.name = "jacobi c formal order alpha=" + alpha.str();
  r.exact = true;
  r.lhs = std::to_string(highest);
  r.rhs = std::to_string(top);
  r.status = highest == top ? CheckStatus::Pass : CheckStatus::Mismatch;
  return r;
}

}  // namespace infdiff

#endif  // INFDIFF_IDENTITIES_HPP
