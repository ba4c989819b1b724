// Exact rationals, combinatorial helpers, dense and (M,N)-graded polynomials.

#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "infdiff/combinatorics.hpp"
#include "infdiff/mnpoly.hpp"

namespace {

using namespace infdiff;

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

TEST(Rational, CanonicalFormAndParsing) {
  EXPECT_EQ(q(6, -4), q(-3, 2));
  EXPECT_EQ(q(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/2"), q(-3, 2));
  EXPECT_EQ(Rational::parse("4/2").str(), "2");
  EXPECT_EQ(Rational::parse(" 7 "), q(7));
  EXPECT_THROW(Rational::parse("0.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1e-3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(q(1, 0), std::domain_error);
}

TEST(Rational, ArithmeticAndOrdering) {
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(1, 2) - q(1, 3), q(1, 6));
  EXPECT_EQ(q(2, 3) * q(9, 4), q(3, 2));
  EXPECT_EQ(q(2, 3) / q(4, 9), q(3, 2));
  EXPECT_THROW(q(1) / q(0), std::domain_error);
  EXPECT_LT(q(-1, 2), q(-1, 3));
  EXPECT_GT(q(7, 3), q(2));
  EXPECT_TRUE(q(4, 2).is_integer());
  EXPECT_TRUE(q(0).is_nonneg_integer());
  EXPECT_FALSE(q(-1).is_nonneg_integer());
  EXPECT_TRUE(q(-1).is_nonpos_integer());
  EXPECT_EQ(q(-5).to_int(), -5);
  EXPECT_EQ(pow(q(-2, 3), 3), q(-8, 27));
  EXPECT_EQ(sign_power(3), q(-1));
  EXPECT_EQ(abs(q(-2, 7)), q(2, 7));
  EXPECT_DOUBLE_EQ(q(1, 4).to_double(), 0.25);
}

TEST(Rational, HashAgreesWithEquality) {
  std::unordered_set<Rational> s{q(1, 2), q(2, 4), q(3, 6), q(-1, 2)};
  EXPECT_EQ(s.size(), 2u);
}

TEST(Rational, RandomFieldAxioms) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::int64_t> num(-50, 50), den(1, 30);
  for (int t = 0; t < 300; ++t) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
    if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(Rational::parse(a.str()), a);
  }
}

TEST(Combinatorics, Values) {
  EXPECT_EQ(factorial(0), q(1));
  EXPECT_EQ(factorial(10), q(3628800));
  EXPECT_THROW(factorial(-1), std::invalid_argument);
  EXPECT_EQ(pochhammer(q(3), 0), q(1));
  EXPECT_EQ(pochhammer(q(3), 4), q(360));
  EXPECT_EQ(pochhammer(q(1, 2), 3), q(15, 8));
  EXPECT_EQ(pochhammer(q(-2), 3), q(0));
  EXPECT_EQ(gen_binomial(q(5), 2), q(10));
  EXPECT_EQ(gen_binomial(q(1, 2), 2), q(-1, 8));
  EXPECT_EQ(gen_binomial(q(-1), 3), q(-1));
  EXPECT_EQ(gen_binomial(q(3), 5), q(0));
  EXPECT_EQ(gen_binomial(q(3), -1), q(0));
  // 1/Gamma(k) with the k = 0 pole giving 0.
  EXPECT_EQ(reciprocal_gamma_ratio(0), q(0));
  EXPECT_EQ(reciprocal_gamma_ratio(1), q(1));
  EXPECT_EQ(reciprocal_gamma_ratio(4), q(1, 6));
}

TEST(Combinatorics, PascalRuleForRationalTop) {
  for (const Rational& a : {q(1, 2), q(-7, 3), q(5)})
    for (std::int64_t k = 1; k <= 8; ++k)
      EXPECT_EQ(gen_binomial(a + q(1), k), gen_binomial(a, k) + gen_binomial(a, k - 1));
}

TEST(Poly, NormalizationDegreeAndRendering) {
  const Poly zero{q(0), q(0)};
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), -1);
  EXPECT_EQ(to_string(zero), "0");
  const Poly p{q(1), q(-2), q(1, 2)};
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(to_string(p), "1 - 2*x + 1/2*x^2");
  EXPECT_EQ(to_string(Poly{q(0), q(-1)}), "-x");
  EXPECT_EQ(to_string(Poly{q(0), q(0), q(0), q(3, 4)}), "3/4*x^3");
  EXPECT_EQ(p.evaluate(q(2)), q(-1));
}

TEST(Poly, ParseInvertsRendering) {
  for (const char* s : {"0", "-x", "3*x - 1/2*x^2", "1 - 2*x + 1/2*x^2", "-1/2 + x^2 - 1/2*x^4", "x^10"})
    EXPECT_EQ(to_string(parse_poly(s)), s);
  EXPECT_EQ(parse_poly("x^2 + x^2 - 2"), (Poly{q(-2), q(0), q(2)}));
  EXPECT_THROW(parse_poly("1 + y"), std::invalid_argument);
  EXPECT_THROW(parse_poly("x^"), std::invalid_argument);
}

TEST(Poly, DerivativeReflectCompose) {
  const Poly p{q(1), q(2), q(3), q(4)};
  EXPECT_EQ(derivative(p), (Poly{q(2), q(6), q(12)}));
  EXPECT_EQ(derivative(p, 3), (Poly{q(24)}));
  EXPECT_TRUE(derivative(p, 4).is_zero());
  EXPECT_EQ(reflect(p), (Poly{q(1), q(-2), q(3), q(-4)}));
  // p(1 - x) evaluated at 0 equals p(1).
  EXPECT_EQ(compose_affine(p, q(1), q(-1)).evaluate(q(0)), p.evaluate(q(1)));
  EXPECT_EQ(pow(Poly{q(1), q(1)}, 3), (Poly{q(1), q(3), q(3), q(1)}));
}

Poly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> num(-9, 9), den(1, 5), deg(0, 6);
  std::vector<Rational> c;
  const auto d = deg(rng);
  for (std::int64_t k = 0; k <= d; ++k) c.emplace_back(num(rng), den(rng));
  return Poly(std::move(c));
}

TEST(Poly, RandomRingAndLeibnizProperties) {
  std::mt19937 rng(777);
  for (int t = 0; t < 200; ++t) {
    const Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(derivative(a * b), derivative(a) * b + a * derivative(b));
    EXPECT_EQ(reflect(reflect(a)), a);
    EXPECT_EQ(parse_poly(to_string(a)), a);
    const Rational at(static_cast<std::int64_t>(t % 7) - 3, 2);
    EXPECT_EQ((a * b).evaluate(at), a.evaluate(at) * b.evaluate(at));
  }
}

TEST(MNPoly, BlocksAndRendering) {
  const BlockKey M{1, 0}, N{0, 1};
  MNPoly p = MNPoly(Poly{q(1), q(-1)}) + MNPoly(Poly{q(0), q(-1)}, M);
  EXPECT_EQ(to_string(p), "(1 - x) + M*(-x)");
  EXPECT_EQ(to_string(BlockKey{2, 0}), "M^2");
  EXPECT_EQ(to_string(BlockKey{1, 1}), "M*N");
  EXPECT_EQ(p.block(M), (Poly{q(0), q(-1)}));
  EXPECT_TRUE(p.block(N).is_zero());
  const MNPoly shifted = mul_block(p, 0, 1);
  EXPECT_EQ(shifted.block(BlockKey{1, 1}), (Poly{q(0), q(-1)}));
  EXPECT_EQ(eval_params(p, q(2), q(5)), (Poly{q(1), q(-3)}));
  EXPECT_EQ(eval_params(swap_masses(shifted), q(5), q(2)), eval_params(shifted, q(2), q(5)));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p * MNPoly::scalar(q(1), M)).block(BlockKey{2, 0}), (Poly{q(0), q(-1)}));
}

TEST(MNPoly, MassIdentificationAndDropping) {
  const BlockKey M{1, 0}, N{0, 1}, MN{1, 1};
  const MNPoly p = MNPoly(Poly{q(1)}, M) + MNPoly(Poly{q(2)}, N) + MNPoly(Poly{q(3)}, MN);
  const MNPoly id = identify_masses(p);
  EXPECT_EQ(id.block(M), (Poly{q(3)}));
  EXPECT_EQ(id.block(BlockKey{2, 0}), (Poly{q(3)}));
  EXPECT_EQ(drop_n(p), MNPoly(Poly{q(1)}, M));
}

TEST(MNPoly, RandomEvaluationIsARingHomomorphism) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<unsigned> e(0, 2);
  for (int t = 0; t < 100; ++t) {
    MNPoly a, b;
    for (int k = 0; k < 3; ++k) {
      a += MNPoly(random_poly(rng), BlockKey{e(rng), e(rng)});
      b += MNPoly(random_poly(rng), BlockKey{e(rng), e(rng)});
    }
    const Rational m(t % 5, 3), n(-(t % 4), 2);
    EXPECT_EQ(eval_params(a * b, m, n), eval_params(a, m, n) * eval_params(b, m, n));
    EXPECT_EQ(eval_params(derivative(a), m, n), derivative(eval_params(a, m, n)));
    EXPECT_EQ(eval_params(reflect(a), m, n), reflect(eval_params(a, m, n)));
  }
}

}  // namespace
