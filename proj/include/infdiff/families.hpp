#ifndef INFDIFF_FAMILIES_HPP
#define INFDIFF_FAMILIES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "infdiff/combinatorics.hpp"
#include "infdiff/mnpoly.hpp"

namespace infdiff {

enum class FamilyKind {
  LaguerreClassical,
  LaguerreM,  ///< Sobolev Laguerre with N = 0 (point mass at the origin only)
  LaguerreMN,
  JacobiClassical,
  JacobiMN,
  JacobiSymmetricMM,
};

inline std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::LaguerreClassical: return "laguerre-classical";
    case FamilyKind::LaguerreM: return "laguerre-m";
    case FamilyKind::LaguerreMN: return "laguerre-mn";
    case FamilyKind::JacobiClassical: return "jacobi-classical";
    case FamilyKind::JacobiMN: return "jacobi-mn";
    case FamilyKind::JacobiSymmetricMM: return "jacobi-symmetric-mm";
  }
  return "?";
}

inline bool is_jacobi(FamilyKind k) {
  return k == FamilyKind::JacobiClassical || k == FamilyKind::JacobiMN || k == FamilyKind::JacobiSymmetricMM;
}

namespace detail {
inline void require_parameter(const Rational& p, const char* what) {
  if (p <= Rational(-1)) throw std::invalid_argument(std::string(what) + " must be > -1, got " + p.str());
}
}  // namespace detail

/// Family selector with validated parameters.  beta is ignored for the
/// Laguerre kinds and forced equal to alpha for the symmetric Jacobi kind.
class FamilyParams {
public:
  FamilyParams(FamilyKind kind, Rational alpha, Rational beta = Rational(0))
      : kind_(kind), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    detail::require_parameter(alpha_, "alpha");
    if (kind_ == FamilyKind::JacobiSymmetricMM) beta_ = alpha_;
    if (is_jacobi(kind_)) detail::require_parameter(beta_, "beta");
  }
  [[nodiscard]] FamilyKind kind() const { return kind_; }
  [[nodiscard]] const Rational& alpha() const { return alpha_; }
  [[nodiscard]] const Rational& beta() const { return beta_; }

private:
  FamilyKind kind_;
  Rational alpha_;
  Rational beta_;
};

/// A generalized orthogonal polynomial together with the connection
/// coefficients that build it from the classical one: (A0, A1, A2) for the
/// Laguerre and general Jacobi kinds, (C0, C1) for the symmetric Jacobi kind.
/// Connection coefficients are MNPolys of x-degree zero.
struct GeneralizedPoly {
  FamilyParams params;
  std::int64_t n;
  MNPoly value;
  std::vector<MNPoly> connection;
};

/// L_n^{(alpha)}(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!
inline Poly laguerre_classical(const Rational& alpha, std::int64_t n) {
  detail::require_parameter(alpha, "alpha");
  if (n < 0) throw std::invalid_argument("laguerre_classical: negative degree");
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k)
    c[static_cast<std::size_t>(k)] = sign_power(k) * gen_binomial(Rational(n) + alpha, n - k) / factorial(k);
  return Poly(std::move(c));
}

/// P_n^{(alpha,beta)}(x) from the standard expansion in powers of (x-1)/2
/// and (x+1)/2.
inline Poly jacobi_classical(const Rational& alpha, const Rational& beta, std::int64_t n) {
  detail::require_parameter(alpha, "alpha");
  detail::require_parameter(beta, "beta");
  if (n < 0) throw std::invalid_argument("jacobi_classical: negative degree");
  const Poly minus({Rational(-1, 2), Rational(1, 2)});
  const Poly plus({Rational(1, 2), Rational(1, 2)});
  std::vector<Poly> mp{Poly::constant(Rational(1))}, pp{Poly::constant(Rational(1))};
  for (std::int64_t k = 1; k <= n; ++k) {
    mp.push_back(mp.back() * minus);
    pp.push_back(pp.back() * plus);
  }
  Poly r;
  for (std::int64_t k = 0; k <= n; ++k) {
    const Rational c = gen_binomial(Rational(n) + alpha, n - k) * gen_binomial(Rational(n) + beta, k);
    r += (mp[static_cast<std::size_t>(k)] * pp[static_cast<std::size_t>(n - k)]) * c;
  }
  return r;
}

namespace detail {

/// C(n+s-1, n)/s, written as (s+1)_{n-1}/n! for n >= 1 so that s = 0 is
/// harmless.  At n = 0 the value only ever multiplies a vanishing
/// derivative, so the removable singularity at s = 0 is reported as 0.
inline Rational binomial_over(const Rational& s, std::int64_t n) {
  if (n == 0) return s.is_zero() ? Rational(0) : Rational(1) / s;
  return pochhammer(s + Rational(1), n - 1) / factorial(n);
}

}  // namespace detail

/// L_n^{alpha,M,N} = A0 L + A1 L' + A2 L''.
inline GeneralizedPoly laguerre_mn(const Rational& alpha, std::int64_t n) {
  const Poly L = laguerre_classical(alpha, n);
  const Rational a = alpha, nr(n);
  const Rational one(1), two(2), three(3);
  const BlockKey K00{0, 0}, KM{1, 0}, KN{0, 1}, KMN{1, 1};

  MNPoly A0 = MNPoly::scalar(one, K00);
  A0 += MNPoly::scalar(gen_binomial(nr + a, n - 1), KM);
  A0 += MNPoly::scalar((nr * (a + two) - (a + one)) / ((a + one) * (a + three)) * gen_binomial(nr + a, n - 2), KN);
  A0 += MNPoly::scalar(gen_binomial(nr + a, n - 1) * gen_binomial(nr + a + one, n - 2) / ((a + one) * (a + two)), KMN);

  MNPoly A1 = MNPoly::scalar(gen_binomial(nr + a, n), KM);
  A1 += MNPoly::scalar((nr - one) / (a + one) * gen_binomial(nr + a, n - 1), KN);
  A1 += MNPoly::scalar(two * gen_binomial(nr + a, n) * gen_binomial(nr + a + one, n - 2) / ((a + one) * (a + one)), KMN);

  MNPoly A2 = MNPoly::scalar(gen_binomial(nr + a, n - 1) / (a + one), KN);
  A2 += MNPoly::scalar(gen_binomial(nr + a, n) * gen_binomial(nr + a + one, n - 1) / ((a + one) * (a + one)), KMN);

  MNPoly value = A0 * L + A1 * derivative(L, 1) + A2 * derivative(L, 2);
  return {FamilyParams(FamilyKind::LaguerreMN, alpha), n, std::move(value), {A0, A1, A2}};
}

/// L_n^{alpha,M} = L_n^{alpha,M,0}.
inline GeneralizedPoly laguerre_m(const Rational& alpha, std::int64_t n) {
  GeneralizedPoly g = laguerre_mn(alpha, n);
  g.params = FamilyParams(FamilyKind::LaguerreM, alpha);
  g.value = drop_n(g.value);
  for (auto& c : g.connection) c = drop_n(c);
  return g;
}

/// P_n^{alpha,beta,M,N} = A0 P + [A1 (1-x) - A2 (1+x)] P', point mass M at
/// x = -1 and N at x = +1.
inline GeneralizedPoly jacobi_mn(const Rational& alpha, const Rational& beta, std::int64_t n) {
  const Poly P = jacobi_classical(alpha, beta, n);
  const Rational a = alpha, b = beta, nr(n), one(1), two(2);
  const BlockKey K00{0, 0}, KM{1, 0}, KN{0, 1}, KMN{1, 1};
  const Rational ab1 = gen_binomial(nr + a + b + one, n);

  MNPoly A0 = MNPoly::scalar(one, K00);
  A0 += MNPoly::scalar(gen_binomial(nr + b, n - 1) * ab1 / gen_binomial(nr + a, n), KM);
  A0 += MNPoly::scalar(gen_binomial(nr + a, n - 1) * ab1 / gen_binomial(nr + b, n), KN);
  const Rational c = gen_binomial(nr + a + b + one, n - 1);
  A0 += MNPoly::scalar((a + b + two) * (a + b + two) / ((a + one) * (b + one)) * c * c, KMN);

  // C(n+a+b, n)/(a+b+1) through binomial_over to survive a + b = -1.
  const Rational over = detail::binomial_over(a + b + one, n);
  const Rational mixed = gen_binomial(nr + a + b, n - 1) * ab1;
  MNPoly A1 = MNPoly::scalar(gen_binomial(nr + b, n) * over / gen_binomial(nr + a, n), KM);
  A1 += MNPoly::scalar(mixed / (a + one), KMN);
  MNPoly A2 = MNPoly::scalar(gen_binomial(nr + a, n) * over / gen_binomial(nr + b, n), KN);
  A2 += MNPoly::scalar(mixed / (b + one), KMN);

  const Poly dP = derivative(P, 1);
  MNPoly value = A0 * P + A1 * (dP * Poly({one, -one})) - A2 * (dP * Poly({one, one}));
  return {FamilyParams(FamilyKind::JacobiMN, alpha, beta), n, std::move(value), {A0, A1, A2}};
}

/// P_n^{alpha,alpha,M,M} = C0 P - C1 x P', an MNPoly in M alone.
inline GeneralizedPoly jacobi_symmetric_mm(const Rational& alpha, std::int64_t n) {
  const Poly P = jacobi_classical(alpha, alpha, n);
  const Rational a = alpha, nr(n), one(1), two(2), four(4);
  const Rational b1 = gen_binomial(nr + two * a + one, n);
  const Rational b2 = gen_binomial(nr + two * a + one, n - 1);

  MNPoly C0 = MNPoly::scalar(one);
  C0 += MNPoly::scalar(two * nr / (a + one) * b1, {1, 0});
  C0 += MNPoly::scalar(four * b2 * b2, {2, 0});

  MNPoly C1 = MNPoly::scalar(two * detail::binomial_over(two * a + one, n), {1, 0});
  C1 += MNPoly::scalar(two / (a + one) * gen_binomial(nr + two * a, n - 1) * b1, {2, 0});

  MNPoly value = C0 * P - C1 * (Poly::x() * derivative(P, 1));
  return {FamilyParams(FamilyKind::JacobiSymmetricMM, alpha), n, std::move(value), {C0, C1}};
}

/// Degree-n member of a family.
inline GeneralizedPoly family_member(const FamilyParams& p, std::int64_t n) {
  switch (p.kind()) {
    case FamilyKind::LaguerreClassical:
      return {p, n, MNPoly(laguerre_classical(p.alpha(), n)), {MNPoly::scalar(Rational(1))}};
    case FamilyKind::LaguerreM: return laguerre_m(p.alpha(), n);
    case FamilyKind::LaguerreMN: return laguerre_mn(p.alpha(), n);
    case FamilyKind::JacobiClassical:
      return {p, n, MNPoly(jacobi_classical(p.alpha(), p.beta(), n)), {MNPoly::scalar(Rational(1))}};
    case FamilyKind::JacobiMN: return jacobi_mn(p.alpha(), p.beta(), n);
    case FamilyKind::JacobiSymmetricMM: return jacobi_symmetric_mm(p.alpha(), n);
  }
  throw std::logic_error("family_member: unknown kind");
}

/// <f,g> = (1/Gamma(a+1)) int_0^inf x^a e^{-x} f g dx + M f(0)g(0) + N f'(0)g'(0).
/// The normalized moments are (a+1)_k.
inline Rational sobolev_inner_product_laguerre(const Poly& f, const Poly& g, const Rational& alpha,
                                               const Rational& m, const Rational& n) {
  detail::require_parameter(alpha, "alpha");
  const Poly h = f * g;
  Rational s(0);
  Rational moment(1);
  for (std::size_t k = 0; k < h.size(); ++k) {
    s += h[k] * moment;
    moment *= alpha + Rational(static_cast<std::int64_t>(k) + 1);
  }
  const Poly df = derivative(f), dg = derivative(g);
  return s + m * f[0] * g[0] + n * df[0] * dg[0];
}

/// Normalized Jacobi weight on [-1,1] plus M delta(x+1) + N delta(x-1).
/// Expanding in t = 1 - x, the normalized moments are
/// E[t^j] = 2^j (a+1)_j / (a+b+2)_j.
inline Rational jacobi_inner_product(const Poly& f, const Poly& g, const Rational& alpha, const Rational& beta,
                                     const Rational& m, const Rational& n) {
  detail::require_parameter(alpha, "alpha");
  detail::require_parameter(beta, "beta");
  const Poly ht = compose_affine(f * g, Rational(1), Rational(-1));
  Rational s(0);
  Rational moment(1);
  for (std::size_t j = 0; j < ht.size(); ++j) {
    s += ht[j] * moment;
    const Rational jr(static_cast<std::int64_t>(j));
    moment *= Rational(2) * (alpha + Rational(1) + jr) / (alpha + beta + Rational(2) + jr);
  }
  return s + m * f.evaluate(Rational(-1)) * g.evaluate(Rational(-1)) +
         n * f.evaluate(Rational(1)) * g.evaluate(Rational(1));
}

}  // namespace infdiff

#endif  // INFDIFF_FAMILIES_HPP
