#ifndef INFDIFF_HYPER_HPP
#define INFDIFF_HYPER_HPP

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infdiff/coefficients.hpp"
#include "infdiff/families.hpp"

namespace infdiff {

/// 50-significant-digit float used only inside numeric checks.
using Float = boost::multiprecision::cpp_bin_float_50;

inline Float to_float(const Rational& r) {
  return Float(r.numerator().get_str()) / Float(r.denominator().get_str());
}

/// pFq(upper; lower; argument) with rational data.
struct HypSeries {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  Rational argument;

  /// Index of the last nonzero term when some upper parameter is a
  /// non-positive integer.
  [[nodiscard]] std::optional<std::int64_t> termination_index() const {
    std::optional<std::int64_t> k;
    for (const auto& a : upper)
      if (a.is_nonpos_integer()) {
        const std::int64_t m = -a.to_int();
        if (!k || m < *k) k = m;
      }
    return k;
  }
  [[nodiscard]] bool terminating() const { return termination_index().has_value(); }
};

namespace detail {
/// Sums terms 0..last, rejecting a lower-parameter pole met on the way.
inline Rational hyp_sum_through(const HypSeries& s, std::int64_t last) {
  Rational sum(0);
  Rational term(1);
  for (std::int64_t k = 0; k <= last; ++k) {
    sum += term;
    if (k == last) break;
    const Rational kr(k);
    Rational num(1), den(k + 1);
    for (const auto& a : s.upper) num *= a + kr;
    for (const auto& b : s.lower) {
      if ((b + kr).is_zero() && !num.is_zero())
        throw std::domain_error("hypergeometric: lower parameter " + b.str() + " hits a pole at term " +
                                std::to_string(k + 1));
      den *= b + kr;
    }
    if (num.is_zero()) break;
    term *= num * s.argument / den;
  }
  return sum;
}
}  // namespace detail

/// Exact value of a terminating series.
inline Rational hyp_terminating(const HypSeries& s) {
  const auto last = s.termination_index();
  if (!last) throw std::invalid_argument("hyp_terminating: series does not terminate");
  return detail::hyp_sum_through(s, *last);
}

/// Exact sum of the first `terms` terms.
inline Rational hyp_partial_sum(const HypSeries& s, std::int64_t terms) {
  if (terms <= 0) throw std::invalid_argument("hyp_partial_sum: terms must be positive");
  return detail::hyp_sum_through(s, terms - 1);
}

enum class CheckStatus { Pass, Mismatch, NonConvergence };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Mismatch: return "mismatch";
    case CheckStatus::NonConvergence: return "non-convergence";
  }
  return "?";
}

/// Outcome of comparing a series against a closed form.  For numeric
/// checks `last_term` is the magnitude of the final term included and
/// `extrapolated_difference` a Richardson estimate of the limit gap.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  bool exact = false;
  std::string lhs;
  std::string rhs;
  double difference = 0;
  double tolerance = 0;
  double last_term = 0;
  std::optional<double> extrapolated_difference;
  [[nodiscard]] bool passed() const { return status == CheckStatus::Pass; }
};

namespace detail {
inline std::string float_str(const Float& f) { return f.str(20, std::ios_base::scientific); }

inline CheckResult numeric_result(std::string name, const Float& lhs, const Float& rhs, const Float& last,
                                  double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.lhs = float_str(lhs);
  r.rhs = float_str(rhs);
  r.difference = static_cast<double>(abs(lhs - rhs));
  r.last_term = static_cast<double>(abs(last));
  r.tolerance = tol;
  if (r.difference < tol)
    r.status = CheckStatus::Pass;
  else if (r.last_term >= tol)
    r.status = CheckStatus::NonConvergence;
  else
    r.status = CheckStatus::Mismatch;
  return r;
}

/// Richardson extrapolation of S(N) ~ S + c1/N + c2/N^2 + ... from partial
/// sums at N/8, N/4, N/2, N.
inline std::optional<Float> richardson(const std::vector<Float>& partial, std::int64_t terms) {
  if (terms < 16) return std::nullopt;
  std::vector<Float> t;
  for (std::int64_t d : {8, 4, 2, 1}) t.push_back(partial[static_cast<std::size_t>(terms / d)]);
  for (int level = 1; level < 4; ++level) {
    const Float f = Float(1 << level);
    for (std::size_t k = 0; k + 1 < t.size(); ++k) t[k] = (f * t[k + 1] - t[k]) / (f - 1);
    t.pop_back();
  }
  return t.front();
}
}  // namespace detail

/// Value of a_i(x) at a rational point for i = 1..terms, using term
/// recurrences instead of building each polynomial.
inline std::vector<Rational> laguerre_a_values(const Rational& alpha, const Rational& x, std::int64_t terms) {
  const auto len = static_cast<std::size_t>(terms) + 1;
  std::vector<Rational> u(len), v(len);  // u_m = C(a+2,m)(a+3)_m ; v_j = C(a+1,j-1) x^j
  u[0] = Rational(1);
  for (std::size_t m = 1; m < len; ++m) {
    const Rational mr(static_cast<std::int64_t>(m));
    u[m] = u[m - 1] * (alpha + Rational(2) - mr + Rational(1)) / mr * (alpha + Rational(3) + mr - Rational(1));
  }
  Rational binom(1), xp = x;  // C(a+1, j-1), x^j at j = 1
  for (std::size_t j = 1; j < len; ++j) {
    v[j] = binom * xp;
    const Rational jm1(static_cast<std::int64_t>(j) - 1);
    binom = binom * (alpha + Rational(1) - jm1) / (jm1 + Rational(1));
    xp *= x;
  }
  std::vector<Rational> out(len);
  Rational fact(1);
  for (std::int64_t i = 1; i <= terms; ++i) {
    fact *= Rational(i);
    Rational s(0);
    for (std::int64_t j = 1; j <= i; ++j)
      s += sign_power(i + j + 1) * v[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = s / fact;
  }
  return out;
}

/// sum_{i=1}^{terms} a_i(x) against -(sin(pi a)/pi) x/((a+2)(a+3)) 1F1(1; a+4; -x)
/// for non-integer alpha.
inline CheckResult thm2_sum_check(const Rational& alpha, const Rational& x, std::int64_t terms, double tol) {
  detail::require_parameter(alpha, "alpha");
  if (alpha.is_integer()) throw std::invalid_argument("thm2_sum_check: alpha must not be an integer");
  if (terms <= 0) throw std::invalid_argument("thm2_sum_check: terms must be positive");

  const auto a = laguerre_a_values(alpha, x, terms);
  std::vector<Float> partial(static_cast<std::size_t>(terms) + 1);
  Rational exact(0);
  for (std::int64_t i = 1; i <= terms; ++i) {
    exact += a[static_cast<std::size_t>(i)];
    partial[static_cast<std::size_t>(i)] = to_float(exact);
  }
  const Float lhs = partial.back();

  const Rational f11 = hyp_partial_sum({{Rational(1)}, {alpha + Rational(4)}, -x}, terms);
  const Float pi = boost::math::constants::pi<Float>();
  const Float rhs = -sin(pi * to_float(alpha)) / pi * to_float(x / ((alpha + Rational(2)) * (alpha + Rational(3)))) *
                    to_float(f11);

  CheckResult r = detail::numeric_result("thm2-sum alpha=" + alpha.str() + " x=" + x.str(), lhs, rhs,
                                         to_float(a.back()), tol);
  if (auto ex = detail::richardson(partial, terms)) r.extrapolated_difference = static_cast<double>(abs(*ex - rhs));
  return r;
}

/// c_i^*(alpha, x) at x = +1 or -1 for i = 0..terms, via Vandermonde-free
/// direct summation with tabulated binomials.
inline std::vector<Rational> jacobi_cstar_values(const Rational& alpha, int x_sign, std::int64_t terms) {
  if (x_sign != 1 && x_sign != -1) throw std::invalid_argument("jacobi_cstar_values: x must be +1 or -1");
  const auto len = static_cast<std::size_t>(terms) + 1;
  std::vector<Rational> b(len);  // C(alpha+1, m)
  b[0] = Rational(1);
  for (std::size_t m = 1; m < len; ++m) {
    const Rational mr(static_cast<std::int64_t>(m));
    b[m] = b[m - 1] * (alpha + Rational(2) - mr) / mr;
  }
  std::vector<Rational> out(len);
  Rational scale(1);  // 2^i / i!
  for (std::int64_t i = 1; i <= terms; ++i) {
    scale = scale * Rational(2) / Rational(i);
    if (i < 2) continue;
    Rational s(0);
    if (x_sign == 1) {
      s = b[static_cast<std::size_t>(i - 2)];  // only k = 0 survives
    } else {
      Rational ck(1);  // C(i-2alpha-5, k)
      const Rational top = Rational(i) - Rational(2) * alpha - Rational(5);
      for (std::int64_t k = 0; k <= i - 2; ++k) {
        s += b[static_cast<std::size_t>(i - k - 2)] * ck;
        ck = ck * (top - Rational(k)) / Rational(k + 1);
      }
    }
    out[static_cast<std::size_t>(i)] = scale * s;
  }
  return out;
}

/// sum_{i>=1} c_i^*(alpha, x) at x = -1 / +1 against 2 1F1(-alpha-1; 3; 2) / 2 1F1(-alpha-1; 3; -2).
/// Exact when both sides terminate (integer alpha), numeric otherwise.
inline CheckResult jacobi_cstar_sum_check(const Rational& alpha, int x_sign, std::int64_t terms, double tol) {
  detail::require_parameter(alpha, "alpha");
  const auto c = jacobi_cstar_values(alpha, x_sign, terms);
  Rational lhs(0);
  for (const auto& v : c) lhs += v;
  const HypSeries f{{-alpha - Rational(1)}, {Rational(3)}, Rational(-2 * x_sign)};
  const std::string name = "cstar-sum alpha=" + alpha.str() + " x=" + std::to_string(x_sign);

  if (alpha.is_nonneg_integer() && terms >= alpha.to_int() + 4) {
    // c_i^*(alpha, +-1) vanishes for i >= alpha + 4, so the partial sum is the full sum.
    const Rational rhs = Rational(2) * hyp_terminating(f);
    CheckResult r;
    r.name = name;
    r.exact = true;
    r.lhs = lhs.str();
    r.rhs = rhs.str();
    r.difference = (lhs - rhs).to_double();
    r.tolerance = tol;
    r.status = lhs == rhs ? CheckStatus::Pass : CheckStatus::Mismatch;
    return r;
  }
  const Rational rhs = Rational(2) * hyp_partial_sum(f, terms);
  return detail::numeric_result(name, to_float(lhs), to_float(rhs), to_float(c.back()), tol);
}

/// Even/odd split of sum c_i^*(alpha, x) at x = +-1 against the two printed
/// single series
///   even: 2 sum (-a-1)_{2i} 2^{2i} / ((2i)! (3)_{2i})
///   odd:  -+2 sum (-a-1)_{2i+1} 2^{2i+1} / ((2i+1)! (3)_{2i+1})   (sign + at x=-1).
inline std::vector<CheckResult> jacobi_cstar_parity_check(const Rational& alpha, int x_sign, std::int64_t terms,
                                                          double tol) {
  const auto c = jacobi_cstar_values(alpha, x_sign, terms);
  Rational even(0), odd(0);
  for (std::size_t i = 0; i < c.size(); ++i) (i % 2 == 0 ? even : odd) += c[i];

  Rational series_even(0), series_odd(0), term(1);  // term_k = (-a-1)_k 2^k / (k! (3)_k)
  Rational last_even(0), last_odd(0);
  for (std::int64_t k = 0; k < terms; ++k) {
    if (k % 2 == 0) {
      series_even += term;
      last_even = term;
    } else {
      series_odd += term;
      last_odd = term;
    }
    term = term * (-alpha - Rational(1) + Rational(k)) * Rational(2) / (Rational(k + 1) * (Rational(3) + Rational(k)));
  }
  series_even *= Rational(2);
  series_odd *= Rational(x_sign == -1 ? 2 : -2);

  const std::string tag = " alpha=" + alpha.str() + " x=" + std::to_string(x_sign);
  auto last_of = [&](const Rational& series_last, std::size_t parity) {
    Float m = abs(to_float(series_last));
    for (std::size_t i = c.size(); i-- > 0;)
      if (i % 2 == parity) {
        m = std::max(m, Float(abs(to_float(c[i]))));
        break;
      }
    return m;
  };
  return {detail::numeric_result("cstar-even" + tag, to_float(even), to_float(series_even), last_of(last_even, 0), tol),
          detail::numeric_result("cstar-odd" + tag, to_float(odd), to_float(series_odd), last_of(last_odd, 1), tol)};
}

}  // namespace infdiff

#endif  // INFDIFF_HYPER_HPP
