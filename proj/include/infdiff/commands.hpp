#ifndef INFDIFF_COMMANDS_HPP
#define INFDIFF_COMMANDS_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infdiff/identities.hpp"
#include "infdiff/io.hpp"

namespace infdiff {

// The four batch commands.  Each takes a RunConfig and returns a Report;
// argument parsing and file output live in the executable.

/// Thrown for invalid configurations (exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string target;  ///< suite / search kind / identity / table name
  std::string alpha = "0";
  std::string beta;    ///< empty: same as alpha
  std::string n;       ///< "a..b"; empty: per-target default
  std::string n_holdout;
  std::string x = "1";
  std::int64_t terms = 200;
  double tol = 1e-8;
  std::int64_t imax = 0;       ///< 0: per-target default
  std::int64_t max_order = -1; ///< -1: per-target default
  std::string problem_file;    ///< search: JSON SearchProblem
};

namespace detail {

inline Rational config_rational(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

inline std::vector<std::int64_t> config_range(const std::string& s, const std::string& fallback) {
  try {
    return parse_range(s.empty() ? fallback : s);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

inline FamilyParams config_family(FamilyKind kind, const Rational& alpha, const Rational& beta) {
  try {
    return FamilyParams(kind, alpha, beta);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

inline std::int64_t formal_order(const Rational& alpha, std::int64_t max_order, const char* who) {
  if (max_order >= 0) return max_order;
  if (!alpha.is_nonneg_integer())
    throw ConfigError(std::string(who) + ": --max-order is required for non-integer alpha");
  return 2 * alpha.to_int() + 4;
}

/// Worst status over a list of checks: mismatch beats non-convergence.
inline ReportStatus combine(const std::vector<CheckResult>& checks) {
  bool nonconv = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Mismatch) return ReportStatus::Fail;
    nonconv = nonconv || c.status == CheckStatus::NonConvergence;
  }
  return nonconv ? ReportStatus::NonConvergence : ReportStatus::Pass;
}

inline json base_params(const RunConfig& c) {
  json p;
  p["target"] = c.target;
  p["alpha"] = c.alpha;
  if (!c.beta.empty()) p["beta"] = c.beta;
  return p;
}

}  // namespace detail

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"thm1",   "alpha0-order10", "thm3", "thm4", "thm5", "laguerre-classical",
                                          "jacobi-classical"};
  return s;
}

/// Applies an operator to a run of family members; passes iff every
/// residual is the exact zero.
inline Report cmd_verify(const RunConfig& c) {
  const Rational alpha = detail::config_rational(c.alpha, "alpha");
  const Rational beta = c.beta.empty() ? alpha : detail::config_rational(c.beta, "beta");
  std::optional<OperatorPencil> pencil;
  std::optional<FamilyParams> family;
  std::string fallback = "0..20";
  if (c.target == "thm1") {
    family = detail::config_family(FamilyKind::LaguerreM, alpha, beta);
    pencil = pencil_laguerre_m(alpha);
  } else if (c.target == "alpha0-order10") {
    if (!alpha.is_zero()) throw ConfigError("alpha0-order10: the printed equation is for alpha = 0");
    family = detail::config_family(FamilyKind::LaguerreMN, alpha, beta);
    pencil = pencil_alpha0_order10();
  } else if (c.target == "thm3") {
    family = detail::config_family(FamilyKind::LaguerreMN, alpha, beta);
    pencil = pencil_laguerre_trivial(alpha);
    fallback = "1..15";
  } else if (c.target == "thm4") {
    family = detail::config_family(FamilyKind::JacobiSymmetricMM, alpha, beta);
    pencil = pencil_jacobi_trivial();
  } else if (c.target == "thm5") {
    family = detail::config_family(FamilyKind::JacobiSymmetricMM, alpha, beta);
    pencil = pencil_jacobi_symmetric(alpha);
  } else if (c.target == "laguerre-classical") {
    family = detail::config_family(FamilyKind::LaguerreClassical, alpha, beta);
    pencil = pencil_laguerre_classical(alpha);
  } else if (c.target == "jacobi-classical") {
    family = detail::config_family(FamilyKind::JacobiClassical, alpha, beta);
    pencil = pencil_jacobi_classical(alpha, beta);
  } else {
    throw ConfigError("verify: unknown suite '" + c.target + "'");
  }
  const auto ns = detail::config_range(c.n, fallback);
  if (ns.front() < 0) throw ConfigError("verify: degrees must be nonnegative");

  Report r;
  r.command = "verify";
  r.params = detail::base_params(c);
  r.params["family"] = std::string(to_string(family->kind()));
  r.params["n"] = c.n.empty() ? fallback : c.n;
  const auto rep = verify_family(*pencil, *family, ns.front(), ns.back(), c.target);
  for (const auto& it : rep.items) {
    json j = residual_item(c.target, it);
    r.items.push_back(j);
  }
  r.status = rep.passed() ? ReportStatus::Pass : ReportStatus::Fail;
  return r;
}

inline const std::vector<std::string>& search_kinds() {
  static const std::vector<std::string> s{"laguerre-m", "jacobi-symmetric", "sobolev", "config"};
  return s;
}

/// Runs a coefficient search and cross-validates it.  Known closed forms
/// are reported as membership items where they apply.
inline Report cmd_search(const RunConfig& c) {
  Report r;
  r.command = "search";
  r.params = detail::base_params(c);
  std::optional<SearchProblem> problem;
  std::vector<std::pair<std::string, OperatorPencil>> expect_member;

  if (c.target == "config") {
    if (c.problem_file.empty()) throw ConfigError("search config: --problem <file.json> is required");
    std::ifstream in(c.problem_file);
    if (!in) throw ConfigError("search config: cannot read '" + c.problem_file + "'");
    try {
      problem = search_problem_from_json(json::parse(in));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("search config: ") + e.what());
    }
    r.params["problem"] = c.problem_file;
  } else {
    const Rational alpha = detail::config_rational(c.alpha, "alpha");
    SearchProblem p;
    if (c.target == "laguerre-m") {
      const std::int64_t order = detail::formal_order(alpha, c.max_order, "laguerre-m");
      p.family = detail::config_family(FamilyKind::LaguerreM, alpha, alpha);
      p.blocks.push_back({{1, 0}, order, degree_at_most_order(order)});
      const std::int64_t last = 2 * order + 4;  // 0..12 at order 4
      p.n_train = detail::config_range(c.n, "0.." + std::to_string(last));
      p.n_holdout = detail::config_range(c.n_holdout, std::to_string(last + 1) + ".." + std::to_string(last + 8));
      expect_member.emplace_back("contains closed-form M-block", pencil_laguerre_m(alpha));
    } else if (c.target == "jacobi-symmetric") {
      const std::int64_t order = detail::formal_order(alpha, c.max_order, "jacobi-symmetric");
      p.family = detail::config_family(FamilyKind::JacobiSymmetricMM, alpha, alpha);
      p.blocks.push_back({{1, 0}, order, {}});
      const std::int64_t last = 2 * order + 7;  // 0..15 at order 4
      p.n_train = detail::config_range(c.n, "0.." + std::to_string(last));
      p.n_holdout = detail::config_range(c.n_holdout, std::to_string(last + 1) + ".." + std::to_string(last + 5));
      if (std::find(p.n_train.begin(), p.n_train.end(), 1) != p.n_train.end())
        p.pins.push_back({{1, 0}, 1, Rational(0)});
      expect_member.emplace_back("contains closed-form symmetric Jacobi operator", pencil_jacobi_symmetric(alpha));
    } else if (c.target == "sobolev") {
      if (!alpha.is_nonneg_integer() && c.max_order < 0)
        throw ConfigError("sobolev: alpha must be a nonnegative integer (or give --max-order)");
      const std::int64_t a = alpha.is_nonneg_integer() ? alpha.to_int() : 0;
      const std::int64_t mn = c.max_order >= 0 ? c.max_order : 4 * a + 10;
      p.family = detail::config_family(FamilyKind::LaguerreMN, alpha, alpha);
      p.blocks.push_back({{1, 0}, std::min(mn, 2 * a + 4), {}});
      p.blocks.push_back({{0, 1}, std::min(mn, 2 * a + 8), {}});
      p.blocks.push_back({{1, 1}, mn, {}});
      p.n_train = detail::config_range(c.n, "1.." + std::to_string(mn + 15));
      p.n_holdout = detail::config_range(c.n_holdout, std::to_string(mn + 16) + ".." + std::to_string(mn + 18));
      if (alpha.is_zero()) expect_member.emplace_back("contains printed order-10 equation", pencil_alpha0_order10());
    } else {
      throw ConfigError("search: unknown kind '" + c.target + "'");
    }
    problem = std::move(p);
  }
  if (problem->n_train.empty()) throw ConfigError("search: empty n_train");

  const SearchSolution sol = solve_search(*problem);
  r.extra["solution"] = to_json(sol);
  if (!sol.solved()) {
    r.status = ReportStatus::Inconsistent;
    return r;
  }
  bool ok = sol.train_verified;
  {
    json j;
    j["name"] = "train residuals re-verified";
    j["status"] = sol.train_verified ? "pass" : "fail";
    r.items.push_back(j);
  }
  const CrossValidation cv = cross_validate(sol, problem->n_holdout);
  for (const auto& it : cv.particular) {
    json j;
    j["name"] = "holdout particular";
    j["n"] = it.n;
    j["status"] = it.passed ? "pass" : "fail";
    j["residual"] = to_json(it.residual);
    r.items.push_back(j);
    ok = ok && it.passed;
  }
  for (std::size_t k = 0; k < cv.basis.size(); ++k)
    for (const auto& it : cv.basis[k]) {
      json j;
      j["name"] = "holdout basis " + std::to_string(k);
      j["n"] = it.n;
      j["status"] = it.passed ? "pass" : "fail";
      r.items.push_back(j);
      ok = ok && it.passed;
    }
  r.extra["validation"] = to_string(cv.status);
  for (const auto& [name, pencil] : expect_member) {
    const bool in = contains(sol, pencil);
    json j;
    j["name"] = name;
    j["status"] = in ? "pass" : "fail";
    r.items.push_back(j);
    ok = ok && in;
  }
  if (sol.under_determined) r.status = ReportStatus::UnderDetermined;
  else r.status = ok ? ReportStatus::Pass : ReportStatus::Fail;
  return r;
}

inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> s{"thm2", "thm3", "gauss2f1", "jacobi-functional", "cstar-sum", "jacobi-order"};
  return s;
}

/// Exact identity checks, or numeric ones where the series does not
/// terminate.  Non-convergence is reported separately from mismatch.
inline Report cmd_identities(const RunConfig& c) {
  const Rational alpha = detail::config_rational(c.alpha, "alpha");
  try {
    detail::require_parameter(alpha, "alpha");
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  Report r;
  r.command = "identities";
  r.params = detail::base_params(c);
  std::vector<CheckResult> checks;
  if (c.target == "thm2") {
    if (alpha.is_nonneg_integer()) {
      checks = thm2_exact(alpha);
    } else if (alpha.is_integer()) {
      throw ConfigError("thm2: alpha must be > -1");
    } else {
      const Rational x = detail::config_rational(c.x, "x");
      if (c.terms <= 0) throw ConfigError("thm2: --terms must be positive");
      r.params["x"] = c.x;
      r.params["terms"] = c.terms;
      r.params["tol"] = c.tol;
      checks.push_back(thm2_sum_check(alpha, x, c.terms, c.tol));
    }
  } else if (c.target == "thm3") {
    const auto ns = detail::config_range(c.n, "1..15");
    if (ns.front() < 1) throw ConfigError("thm3: degrees must be >= 1");
    r.params["n"] = c.n.empty() ? "1..15" : c.n;
    for (std::int64_t n : ns)
      for (auto& ch : thm3_observations(alpha, n)) checks.push_back(std::move(ch));
  } else if (c.target == "gauss2f1") {
    const std::int64_t imax = c.imax > 0 ? c.imax : 30;
    r.params["imax"] = imax;
    for (std::int64_t i = 1; i <= imax; ++i)
      for (auto& ch : gauss_2f1_identities(alpha, i)) checks.push_back(std::move(ch));
  } else if (c.target == "jacobi-functional") {
    const auto ns = detail::config_range(c.n, "0..20");
    r.params["n"] = c.n.empty() ? "0..20" : c.n;
    for (std::int64_t n : ns)
      for (auto& ch : jacobi_functional_equations(alpha, n)) checks.push_back(std::move(ch));
  } else if (c.target == "cstar-sum") {
    const Rational x = detail::config_rational(c.x, "x");
    if (x != Rational(1) && x != Rational(-1)) throw ConfigError("cstar-sum: x must be 1 or -1");
    r.params["x"] = c.x;
    r.params["terms"] = c.terms;
    r.params["tol"] = c.tol;
    const int s = x.sign();
    checks.push_back(jacobi_cstar_sum_check(alpha, s, c.terms, c.tol));
    for (auto& ch : jacobi_cstar_parity_check(alpha, s, c.terms, c.tol)) checks.push_back(std::move(ch));
  } else if (c.target == "jacobi-order") {
    if (!alpha.is_nonneg_integer()) throw ConfigError("jacobi-order: alpha must be a nonnegative integer");
    checks.push_back(jacobi_c_formal_order(alpha));
  } else {
    throw ConfigError("identities: unknown identity '" + c.target + "'");
  }
  for (const auto& ch : checks) r.items.push_back(check_item(ch));
  r.status = detail::combine(checks);
  return r;
}

inline const std::vector<std::string>& emit_tables() {
  static const std::vector<std::string> s{"laguerre-a", "laguerre-bstar", "laguerre-cstar", "jacobi-b",
                                          "jacobi-cstar", "jacobi-c",       "alpha0-order10"};
  return s;
}

/// Coefficient tables for orders 1..imax (order zero depends on n and is
/// left out).  alpha0-order10 yields one table per block.
inline std::vector<CoefficientTable> emit_tables(const RunConfig& c) {
  const Rational alpha = detail::config_rational(c.alpha, "alpha");
  try {
    detail::require_parameter(alpha, "alpha");
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const std::int64_t imax = c.imax > 0 ? c.imax : 10;
  std::vector<CoefficientTable> out;
  auto make = [&](std::string family, std::string symbol, auto&& gen) {
    CoefficientTable t{std::move(family), alpha, std::move(symbol), {}};
    for (std::int64_t i = 1; i <= imax; ++i) t.entries.emplace_back(i, gen(i));
    out.push_back(std::move(t));
  };
  if (c.target == "laguerre-a") make("laguerre-a", "a", [&](std::int64_t i) { return coeff_laguerre_a(alpha, i, 0); });
  else if (c.target == "laguerre-bstar") make("laguerre-bstar", "b", [&](std::int64_t i) { return coeff_laguerre_bstar(alpha, i); });
  else if (c.target == "laguerre-cstar") make("laguerre-cstar", "c", [&](std::int64_t i) { return coeff_laguerre_cstar(alpha, i); });
  else if (c.target == "jacobi-b") make("jacobi-b", "b", [&](std::int64_t i) { return coeff_jacobi_b(0, i); });
  else if (c.target == "jacobi-cstar") make("jacobi-cstar", "c", [&](std::int64_t i) { return coeff_jacobi_cstar(alpha, i); });
  else if (c.target == "jacobi-c") make("jacobi-c", "c", [&](std::int64_t i) { return coeff_jacobi_c(alpha, i, 0); });
  else if (c.target == "alpha0-order10") {
    if (!alpha.is_zero()) throw ConfigError("alpha0-order10: the printed equation is for alpha = 0");
    for (const auto& [key, coeffs] : alpha0_order10_table().coefficients) {
      CoefficientTable t{"alpha0-order10 block " + to_string(key), alpha, "c", {}};
      for (std::size_t i = 1; i < coeffs.size() && static_cast<std::int64_t>(i) <= imax; ++i)
        t.entries.emplace_back(static_cast<std::int64_t>(i), coeffs[i]);
      out.push_back(std::move(t));
    }
  } else {
    throw ConfigError("emit: unknown table '" + c.target + "'");
  }
  return out;
}

}  // namespace infdiff

#endif  // INFDIFF_COMMANDS_HPP
