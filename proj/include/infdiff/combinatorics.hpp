#ifndef INFDIFF_COMBINATORICS_HPP
#define INFDIFF_COMBINATORICS_HPP

#include <cstdint>
#include <stdexcept>

#include "infdiff/rational.hpp"

namespace infdiff {

/// k!
inline Rational factorial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f, mpz_class(1));
}

/// Rising factorial (a)_k = a(a+1)...(a+k-1); (a)_0 = 1.
inline Rational pochhammer(const Rational& a, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("pochhammer: negative length");
  Rational r(1);
  Rational t = a;
  for (std::int64_t j = 0; j < k; ++j) {
    r *= t;
    if (r.is_zero()) break;
    t += Rational(1);
  }
  return r;
}

/// Generalized binomial a(a-1)...(a-k+1)/k!.  Zero for k < 0, so formulas
/// with a negative lower index need no special cases.
inline Rational gen_binomial(const Rational& a, std::int64_t k) {
  if (k < 0) return Rational(0);
  Rational r(1);
  Rational t = a;
  for (std::int64_t j = 0; j < k; ++j) {
    r *= t;
    if (r.is_zero()) return r;
    t -= Rational(1);
  }
  return r / factorial(k);
}

/// 1/Gamma(k) for integer k >= 0, i.e. 1/(k-1)! and 0 at the pole k = 0.
inline Rational reciprocal_gamma_ratio(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("reciprocal_gamma_ratio: k must be >= 0");
  if (k == 0) return Rational(0);
  return Rational(1) / factorial(k - 1);
}

}  // namespace infdiff

#endif  // INFDIFF_COMBINATORICS_HPP
