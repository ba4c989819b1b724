// Serialization, configuration parsing and the command layer.

#include <gtest/gtest.h>

#include "infdiff/commands.hpp"

namespace {

using namespace infdiff;

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

RunConfig config(std::string target, std::string alpha = "0") {
  RunConfig c;
  c.target = std::move(target);
  c.alpha = std::move(alpha);
  return c;
}

TEST(Json, CoefficientTablesRoundTrip) {
  for (const char* name : {"laguerre-a", "laguerre-cstar", "jacobi-c", "jacobi-cstar"})
    for (const char* alpha : {"0", "1/2", "3"}) {
      RunConfig c = config(name, alpha);
      c.imax = 8;
      for (const auto& t : emit_tables(c)) {
        const json j = to_json(t);
        const CoefficientTable back = table_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.family, t.family);
        EXPECT_EQ(back.alpha, t.alpha);
        EXPECT_EQ(back.symbol, t.symbol);
        EXPECT_EQ(back.entries, t.entries) << name << " alpha=" << alpha;
      }
    }
}

TEST(Json, RationalsAreExactStrings) {
  EXPECT_EQ(to_json(q(-3, 7)).get<std::string>(), "-3/7");
  EXPECT_EQ(to_json(Poly{q(1), q(0), q(-1, 2)}).get<std::string>(), "1 - 1/2*x^2");
  const MNPoly p = MNPoly(Poly{q(1)}) + MNPoly(Poly{q(0), q(2)}, BlockKey{1, 1});
  EXPECT_EQ(mnpoly_from_json(to_json(p)), p);
}

TEST(Json, BlockKeys) {
  EXPECT_EQ(parse_block_key("1"), BlockKey{});
  EXPECT_EQ(parse_block_key("M"), (BlockKey{1, 0}));
  EXPECT_EQ(parse_block_key("M*N"), (BlockKey{1, 1}));
  EXPECT_EQ(parse_block_key("M^2*N^3"), (BlockKey{2, 3}));
  for (const BlockKey k : {BlockKey{}, BlockKey{1, 0}, BlockKey{0, 1}, BlockKey{2, 1}})
    EXPECT_EQ(parse_block_key(to_string(k)), k);
  EXPECT_THROW(parse_block_key("Q"), std::invalid_argument);
  EXPECT_THROW(parse_block_key("M^"), std::invalid_argument);
}

TEST(Latex, TablesAndPolynomials) {
  EXPECT_EQ(to_latex(q(-1, 2)), "-\\frac{1}{2}");
  RunConfig c = config("laguerre-a");
  c.imax = 2;
  const std::string tex = to_latex(emit_tables(c).front());
  EXPECT_NE(tex.find("a_{2}(x) &= 3x - \\frac{1}{2}x^{2}"), std::string::npos) << tex;
}

TEST(Config, Ranges) {
  EXPECT_EQ(parse_range("2..5"), (std::vector<std::int64_t>{2, 3, 4, 5}));
  EXPECT_EQ(parse_range("7"), std::vector<std::int64_t>{7});
  EXPECT_THROW(parse_range("5..2"), std::invalid_argument);
  EXPECT_THROW(parse_range("a..b"), std::invalid_argument);
  EXPECT_EQ(degrees_from_json(json::parse(R"(["0..2", 5])")), (std::vector<std::int64_t>{0, 1, 2, 5}));
}

TEST(Config, SearchProblemFromJson) {
  const json j = json::parse(R"({
    "family": "jacobi-symmetric-mm", "alpha": "1/2",
    "blocks": [{"block": "M", "max_order": 6, "divisible_by_one_minus_x2": true}],
    "order_zero": {"polynomial_degree": 3},
    "n_train": "0..9", "n_holdout": [10, 11],
    "pins": [{"block": "M", "n": 1, "value": "0"}]
  })");
  const SearchProblem p = search_problem_from_json(j);
  EXPECT_EQ(p.family.kind(), FamilyKind::JacobiSymmetricMM);
  EXPECT_EQ(p.family.alpha(), q(1, 2));
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_TRUE(p.blocks[0].divisible_by_one_minus_x2);
  EXPECT_EQ(p.order_zero_mode, OrderZeroMode::PolynomialInN);
  EXPECT_EQ(p.order_zero_degree, 3);
  EXPECT_EQ(p.n_train.size(), 10u);
  EXPECT_EQ(p.n_holdout, (std::vector<std::int64_t>{10, 11}));
  ASSERT_EQ(p.pins.size(), 1u);
  EXPECT_THROW(search_problem_from_json(json::parse(R"({"family": "hermite", "blocks": [], "n_train": 1})")),
               std::invalid_argument);
  EXPECT_THROW(search_problem_from_json(json::parse(R"({"family": "laguerre-m", "alpha": 0.5, "blocks": [], "n_train": 1})")),
               std::invalid_argument);
}

TEST(Commands, VerifyPassesAndReportsDeterministically) {
  const Report a = cmd_verify(config("thm1", "1/2"));
  EXPECT_EQ(a.status, ReportStatus::Pass);
  EXPECT_EQ(exit_code(a.status), 0);
  EXPECT_EQ(to_json(a).dump(), to_json(cmd_verify(config("thm1", "1/2"))).dump());
  EXPECT_EQ(cmd_verify(config("alpha0-order10")).status, ReportStatus::Pass);
  EXPECT_THROW(cmd_verify(config("nope")), ConfigError);
  EXPECT_THROW(cmd_verify(config("thm1", "0.5")), ConfigError);
}

TEST(Commands, SearchStatuses) {
  RunConfig c = config("laguerre-m");
  EXPECT_EQ(cmd_search(c).status, ReportStatus::Pass);
  c.max_order = 3;
  EXPECT_EQ(cmd_search(c).status, ReportStatus::Inconsistent);
  EXPECT_EQ(exit_code(ReportStatus::Inconsistent), 1);
  c.max_order = -1;
  c.n = "1..1";
  EXPECT_EQ(cmd_search(c).status, ReportStatus::UnderDetermined);
  EXPECT_EQ(exit_code(ReportStatus::UnderDetermined), 1);
}

TEST(Commands, IdentitiesAndExitCodes) {
  EXPECT_EQ(cmd_identities(config("thm2", "2")).status, ReportStatus::Pass);
  RunConfig c = config("thm2", "1/2");
  EXPECT_EQ(cmd_identities(c).status, ReportStatus::NonConvergence);
  EXPECT_EQ(exit_code(ReportStatus::NonConvergence), 3);
  EXPECT_EQ(exit_code(ReportStatus::ConfigError), 2);
  c.tol = 1e-2;
  c.x = "1/4";
  EXPECT_EQ(cmd_identities(c).status, ReportStatus::Pass);
}

TEST(Commands, EmitJacobiFirstCoefficientVanishes) {
  const auto tables = emit_tables(config("jacobi-c"));
  ASSERT_EQ(tables.size(), 1u);
  const json j = to_json(tables.front());
  EXPECT_EQ(j["coefficients"]["c_1"], "0");
  EXPECT_EQ(j["coefficients"]["c_2"], "6 - 6*x^2");
  EXPECT_THROW(emit_tables(config("alpha0-order10", "1")), ConfigError);
  EXPECT_EQ(emit_tables(config("alpha0-order10")).size(), 4u);
}

}  // namespace
