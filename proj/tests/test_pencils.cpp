// Coefficient generators and operator application.

#include <gtest/gtest.h>

#include "infdiff/pencil.hpp"

namespace {

using namespace infdiff;

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }
const BlockKey kM{1, 0};

TEST(Coefficients, LaguerreAlphaZeroClosedForms) {
  EXPECT_EQ(coeff_laguerre_a(q(0), 1, 0), parse_poly("-x"));
  EXPECT_EQ(coeff_laguerre_a(q(0), 2, 0), parse_poly("3*x - 1/2*x^2"));
  EXPECT_EQ(coeff_laguerre_a(q(0), 3, 0), parse_poly("-2*x + x^2"));
  EXPECT_EQ(coeff_laguerre_a(q(0), 4, 0), parse_poly("-1/2*x^2"));
  for (std::int64_t i = 5; i <= 9; ++i) EXPECT_TRUE(coeff_laguerre_a(q(0), i, 0).is_zero());
  for (std::int64_t n = 0; n <= 10; ++n) EXPECT_EQ(coeff_laguerre_a(q(0), 0, n), Poly::constant(q(n * (n + 1), 2)));
}

TEST(Coefficients, LaguerreCoefficientsHaveDegreeAtMostOrder) {
  for (const Rational& a : {q(0), q(2), q(1, 2)})
    for (std::int64_t i = 1; i <= 14; ++i) EXPECT_LE(coeff_laguerre_a(a, i, 0).degree(), i);
}

TEST(Coefficients, TrivialLaguerreCoefficients) {
  // c_i^* = (-x)^i / i!.
  EXPECT_EQ(coeff_laguerre_cstar(q(0), 0), Poly{q(1)});
  EXPECT_EQ(coeff_laguerre_cstar(q(0), 3), (Poly{q(0), q(0), q(0), q(-1, 6)}));
}

TEST(Coefficients, JacobiTrivialCoefficients) {
  // b_i = 2^{i-1} (-x)^i / i!, b_0 = (1 - (-1)^n) / 2.
  EXPECT_EQ(coeff_jacobi_b(0, 1), (Poly{q(0), q(-1)}));
  EXPECT_EQ(coeff_jacobi_b(0, 3), (Poly{q(0), q(0), q(0), q(-2, 3)}));
  EXPECT_EQ(coeff_jacobi_b(4, 0), Poly{});
  EXPECT_EQ(coeff_jacobi_b(5, 0), Poly{q(1)});
}

TEST(Coefficients, SymmetricJacobiAlphaZero) {
  EXPECT_TRUE(coeff_jacobi_c(q(0), 1, 0).is_zero());
  EXPECT_EQ(coeff_jacobi_c(q(0), 2, 0), parse_poly("6 - 6*x^2"));
  EXPECT_EQ(coeff_jacobi_c(q(0), 3, 0), parse_poly("4*x - 4*x^3"));
  EXPECT_EQ(coeff_jacobi_c(q(0), 4, 0), parse_poly("-1/2 + x^2 - 1/2*x^4"));
  for (std::int64_t i = 5; i <= 10; ++i) EXPECT_TRUE(coeff_jacobi_c(q(0), i, 0).is_zero());
  EXPECT_TRUE(coeff_jacobi_c(q(0), 0, 1).is_zero());
  // c_i^* at alpha = 0.
  EXPECT_EQ(coeff_jacobi_cstar(q(0), 2), Poly{q(2)});
  EXPECT_EQ(coeff_jacobi_cstar(q(0), 3), (Poly{q(0), q(4, 3)}));
  EXPECT_EQ(coeff_jacobi_cstar(q(0), 4), (Poly{q(-1, 6), q(0), q(1, 6)}));
}

TEST(Coefficients, SymmetricJacobiDivisibleByOneMinusXSquared) {
  for (const Rational& a : {q(1), q(1, 2)})
    for (std::int64_t i = 1; i <= 10; ++i) {
      const Poly c = coeff_jacobi_c(a, i, 0);
      EXPECT_TRUE(c.evaluate(q(1)).is_zero());
      EXPECT_TRUE(c.evaluate(q(-1)).is_zero());
    }
}

TEST(Coefficients, PrintedTableBlocksSumToZero) {
  const auto& table = alpha0_order10_table();
  EXPECT_EQ(table.coefficients.size(), 4u);
  for (const auto& [key, coeffs] : table.coefficients) {
    if (key == BlockKey{}) continue;
    Poly s;
    for (const auto& c : coeffs) s += c;
    EXPECT_TRUE(s.is_zero()) << to_string(key);
  }
  // The M-block of the printed equation is the closed-form alpha = 0 block.
  const auto& m = table.coefficients.at(kM);
  for (std::int64_t i = 1; i < static_cast<std::int64_t>(m.size()); ++i)
    EXPECT_EQ(m[static_cast<std::size_t>(i)], coeff_laguerre_a(q(0), i, 0));
  EXPECT_EQ(Alpha0Order10Table::order_zero({0, 1}, 3), q(6));
  EXPECT_EQ(Alpha0Order10Table::order_zero({1, 1}, 2), q(1));
}

TEST(Apply, ClassicalOperatorsAnnihilateClassicalFamilies) {
  for (std::int64_t n = 0; n <= 12; ++n) {
    EXPECT_TRUE(apply(pencil_laguerre_classical(q(2, 3)), MNPoly(laguerre_classical(q(2, 3), n)), n).is_zero());
    EXPECT_TRUE(apply(pencil_jacobi_classical(q(1, 2), q(3)), MNPoly(jacobi_classical(q(1, 2), q(3), n)), n).is_zero());
  }
}

TEST(Apply, DetectsWrongEigenvalue) {
  const MNPoly y(laguerre_classical(q(0), 3));
  const MNPoly r = apply(pencil_laguerre_classical(q(0)), y, 4);
  EXPECT_FALSE(r.is_zero());
  EXPECT_EQ(r, y);  // off by exactly one copy of y
}

TEST(Apply, GeneralizedOperatorsAnnihilateTheirFamilies) {
  for (const Rational& a : {q(0), q(3), q(-1, 2)}) {
    EXPECT_TRUE(verify_family(pencil_laguerre_m(a), FamilyParams(FamilyKind::LaguerreM, a), 0, 14).passed());
    EXPECT_TRUE(verify_family(pencil_laguerre_trivial(a), FamilyParams(FamilyKind::LaguerreMN, a), 1, 12).passed());
    EXPECT_TRUE(verify_family(pencil_jacobi_trivial(), FamilyParams(FamilyKind::JacobiSymmetricMM, a), 0, 14).passed());
    EXPECT_TRUE(verify_family(pencil_jacobi_symmetric(a), FamilyParams(FamilyKind::JacobiSymmetricMM, a), 0, 14).passed());
  }
  EXPECT_TRUE(verify_family(pencil_alpha0_order10(), FamilyParams(FamilyKind::LaguerreMN, q(0)), 0, 14).passed());
}

TEST(Apply, FailuresKeepTheResidual) {
  // The alpha = 0 operator does not annihilate the alpha = 1 family.
  const auto rep = verify_family(pencil_laguerre_m(q(0)), FamilyParams(FamilyKind::LaguerreM, q(1)), 1, 3);
  EXPECT_FALSE(rep.passed());
  for (const auto& it : rep.items) EXPECT_FALSE(it.residual.is_zero());
  // The trivial Laguerre operator is stated for n >= 1 only.
  EXPECT_FALSE(verify_family(pencil_laguerre_trivial(q(0)), FamilyParams(FamilyKind::LaguerreMN, q(0)), 0, 0).passed());
}

TEST(Pencil, SumAndShift) {
  const OperatorPencil sum = pencil_laguerre_classical(q(0)) + pencil_laguerre_classical(q(0));
  EXPECT_EQ(sum.coefficient({}, 2, 0), (Poly{q(0), q(2)}));
  EXPECT_EQ(sum.coefficient({}, 0, 5), Poly{q(10)});
  const OperatorPencil shifted = shift_blocks(pencil_laguerre_classical(q(0)), kM);
  EXPECT_EQ(shifted.coefficient(kM, 1, 0), (Poly{q(1), q(-1)}));
  EXPECT_EQ(shifted.coefficient(kM, 0, 7), Poly{q(7)});
  EXPECT_TRUE(shifted.coefficient({}, 0, 7).is_zero());
  // M times an annihilating operator still annihilates.
  EXPECT_TRUE(verify_family(shift_blocks(pencil_jacobi_trivial(), kM), FamilyParams(FamilyKind::JacobiSymmetricMM, q(1)), 0, 10)
                  .passed());
}

}  // namespace
