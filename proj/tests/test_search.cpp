// Operator search: assembly, solving, cross-validation and membership.

#include <gtest/gtest.h>

#include "infdiff/search.hpp"

namespace {

using namespace infdiff;

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }
const BlockKey kM{1, 0};

SearchProblem laguerre_m_problem(std::int64_t max_order, std::vector<std::int64_t> n_train) {
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::LaguerreM, q(0));
  p.blocks.push_back({kM, max_order, degree_at_most_order(max_order)});
  p.n_train = std::move(n_train);
  return p;
}

TEST(Assemble, ColumnLayout) {
  const SearchProblem p = laguerre_m_problem(4, detail::range(0, 12));
  const AssembledSystem as = assemble(p);
  // Orders 1..4 with degree <= order: 2 + 3 + 4 + 5 coefficients, plus one
  // order-zero scalar per training degree.
  EXPECT_EQ(as.layout.size(), 14u + 13u);
  EXPECT_TRUE(as.layout.coefficient(kM, 4, 4).has_value());
  EXPECT_FALSE(as.layout.coefficient(kM, 4, 5).has_value());
  EXPECT_TRUE(as.layout.order_zero(kM, 12).has_value());
  EXPECT_FALSE(as.layout.order_zero(kM, 13).has_value());
  EXPECT_GT(as.residual_rows, 0u);
}

TEST(Assemble, RejectsEmptyTraining) {
  EXPECT_THROW(assemble(laguerre_m_problem(4, {})), std::invalid_argument);
}

TEST(Assemble, ClassicalOnlyProblemIsConsistent) {
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::LaguerreClassical, q(1, 2));
  p.n_train = detail::range(0, 6);
  const auto sol = solve_search(p);
  EXPECT_EQ(sol.unknowns, 0u);
  EXPECT_TRUE(sol.solved());
  EXPECT_TRUE(sol.train_verified);
}

TEST(Solve, RecoversTheLaguerreMBlock) {
  SearchProblem p = laguerre_m_problem(4, detail::range(0, 12));
  p.n_holdout = detail::range(13, 18);
  const auto sol = solve_search(p);
  ASSERT_TRUE(sol.solved());
  EXPECT_EQ(sol.nullspace_dim(), 0u);
  EXPECT_FALSE(sol.under_determined);
  EXPECT_TRUE(sol.train_verified);
  for (std::int64_t i = 1; i <= 4; ++i) EXPECT_EQ(sol.coefficient(kM, i), coeff_laguerre_a(q(0), i, 0)) << i;
  for (std::int64_t n = 0; n <= 12; ++n) EXPECT_EQ(sol.order_zero(kM, n), q(n * (n + 1), 2));
  EXPECT_EQ(cross_validate(sol, p.n_holdout).status, ValidationStatus::Validated);
  EXPECT_TRUE(contains(sol, pencil_laguerre_m(q(0))));
}

TEST(Solve, PolynomialOrderZeroFindsClosedForm) {
  SearchProblem p = laguerre_m_problem(4, detail::range(0, 10));
  p.order_zero_mode = OrderZeroMode::PolynomialInN;
  p.order_zero_degree = 3;
  const auto sol = solve_search(p);
  ASSERT_TRUE(sol.solved());
  EXPECT_EQ(sol.nullspace_dim(), 0u);
  // n(n + 1)/2 = n/2 + n^2/2.
  const auto& u = sol.particular;
  EXPECT_EQ(u[*sol.layout.order_zero_poly(kM, 0)], q(0));
  EXPECT_EQ(u[*sol.layout.order_zero_poly(kM, 1)], q(1, 2));
  EXPECT_EQ(u[*sol.layout.order_zero_poly(kM, 2)], q(1, 2));
  EXPECT_EQ(u[*sol.layout.order_zero_poly(kM, 3)], q(0));
  EXPECT_EQ(sol.order_zero(kM, 40), q(820));
}

TEST(Solve, TooLowOrderIsInconsistent) {
  const auto sol = solve_search(laguerre_m_problem(3, detail::range(0, 12)));
  EXPECT_EQ(sol.status, SearchStatus::Inconsistent);
  EXPECT_FALSE(contains(sol, pencil_laguerre_m(q(0))));
}

TEST(Solve, UnderTrainingIsFlaggedAndFailsHoldout) {
  SearchProblem p = laguerre_m_problem(4, {1});
  const auto sol = solve_search(p);
  ASSERT_TRUE(sol.solved());
  EXPECT_TRUE(sol.under_determined);
  EXPECT_GT(sol.nullspace_dim(), 0u);
  EXPECT_EQ(cross_validate(sol, {}).status, ValidationStatus::NotValidated);
  EXPECT_EQ(cross_validate(sol, detail::range(2, 12)).status, ValidationStatus::TrainOnlyArtifact);
}

TEST(Solve, IsDeterministic) {
  const SearchProblem p = laguerre_m_problem(5, detail::range(0, 6));
  const auto a = solve_search(p), b = solve_search(p);
  EXPECT_EQ(a.particular, b.particular);
  EXPECT_EQ(a.basis, b.basis);
  for (const auto& v : a.basis) {
    // basis vectors are normalized to a leading 1
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& r) { return !r.is_zero(); });
    ASSERT_NE(it, v.end());
    EXPECT_EQ(*it, q(1));
  }
}

TEST(Jacobi, DivisibleAnsatzAndPinRecoverTheSymmetricOperator) {
  const auto sol = search_jacobi_symmetric(q(1), 6, detail::range(0, 19), detail::range(20, 24));
  ASSERT_TRUE(sol.solved());
  EXPECT_EQ(sol.nullspace_dim(), 0u);
  EXPECT_EQ(sol.order_zero(kM, 1), q(0));
  for (std::int64_t i = 1; i <= 6; ++i) {
    const Poly c = sol.coefficient(kM, i);
    EXPECT_EQ(c, coeff_jacobi_c(q(1), i, 0)) << i;
  }
  EXPECT_EQ(cross_validate(sol, sol.problem.n_holdout).status, ValidationStatus::Validated);
  EXPECT_TRUE(contains(sol, pencil_jacobi_symmetric(q(1))));
}

TEST(Jacobi, ColumnBasisCarriesTheFactor) {
  UnknownBlock b{kM, 3, {}, true};
  EXPECT_EQ(column_basis(b, 1), (Poly{q(0), q(1), q(0), q(-1)}));
  b.divisible_by_one_minus_x2 = false;
  EXPECT_EQ(column_basis(b, 2), (Poly{q(0), q(0), q(1)}));
}

TEST(Membership, NullspaceContainsShiftedAnnihilator) {
  // A search whose order reaches the top training degree admits M times the
  // trivial operator (infinite order, truncated by degree) in its nullspace.
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::JacobiSymmetricMM, q(0));
  p.blocks.push_back({kM, 12, {}});
  p.n_train = detail::range(0, 12);
  const auto sol = solve_search(p);
  ASSERT_TRUE(sol.solved());
  EXPECT_TRUE(nullspace_contains(sol, shift_blocks(pencil_jacobi_trivial(), kM)));
  EXPECT_TRUE(contains(sol, pencil_jacobi_symmetric(q(0))));
  EXPECT_FALSE(contains(sol, pencil_jacobi_symmetric(q(1))));
}

TEST(Membership, InSpan) {
  EXPECT_TRUE(in_span({{q(1), q(0)}, {q(0), q(1)}}, {q(3), q(-2)}));
  EXPECT_FALSE(in_span({{q(1), q(1)}}, {q(1), q(2)}));
  EXPECT_TRUE(in_span({}, {q(0), q(0)}));
}

}  // namespace
