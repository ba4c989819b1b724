#ifndef INFDIFF_IO_HPP
#define INFDIFF_IO_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "infdiff/hyper.hpp"
#include "infdiff/search.hpp"

namespace infdiff {

// Machine-readable output.  Rationals are always written as "p/q" strings,
// polynomials as their canonical ascending-power rendering.

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const Poly& p) { return to_string(p); }

/// {"1": "...", "M": "...", ...} in block order; empty object for zero.
inline json to_json(const MNPoly& p) {
  json j = json::object();
  for (const auto& [key, poly] : p.blocks()) j[to_string(key)] = to_string(poly);
  return j;
}

/// Inverse of to_string(BlockKey).
inline BlockKey parse_block_key(std::string_view s) {
  if (s == "1") return {};
  BlockKey k;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char var = s[pos++];
    unsigned power = 1;
    if (pos < s.size() && s[pos] == '^') {
      std::size_t end = pos + 1;
      while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
      if (end == pos + 1) throw std::invalid_argument("parse_block_key: bad exponent in '" + std::string(s) + "'");
      power = static_cast<unsigned>(std::stoul(std::string(s.substr(pos + 1, end - pos - 1))));
      pos = end;
    }
    if (var == 'M') k.m += power;
    else if (var == 'N') k.n += power;
    else throw std::invalid_argument("parse_block_key: bad block '" + std::string(s) + "'");
    if (pos < s.size()) {
      if (s[pos] != '*') throw std::invalid_argument("parse_block_key: bad block '" + std::string(s) + "'");
      ++pos;
    }
  }
  return k;
}

inline MNPoly mnpoly_from_json(const json& j) {
  MNPoly r;
  for (const auto& [key, value] : j.items()) r += MNPoly(parse_poly(value.get<std::string>()), parse_block_key(key));
  return r;
}

/// LaTeX rendering in ascending powers, e.g. "3x - \frac{1}{2}x^{2}".
inline std::string to_latex(const Rational& r) {
  if (r.is_integer()) return r.str();
  const std::string sign = r.sign() < 0 ? "-" : "";
  return sign + "\\frac{" + abs(r).numerator().get_str() + "}{" + r.denominator().get_str() + "}";
}

inline std::string to_latex(const Poly& p, std::string_view var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Rational c = p[k];
    if (c.is_zero()) continue;
    const Rational a = abs(c);
    if (out.empty()) out += c.sign() < 0 ? "-" : "";
    else out += c.sign() < 0 ? " - " : " + ";
    std::string mono;
    if (k >= 1) mono = std::string(var);
    if (k >= 2) mono += "^{" + std::to_string(k) + "}";
    if (k == 0 || a != Rational(1)) out += to_latex(a);
    out += mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

enum class ReportStatus { Pass, Fail, ConfigError, NonConvergence, Inconsistent, UnderDetermined };

inline std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return "pass";
    case ReportStatus::Fail: return "fail";
    case ReportStatus::ConfigError: return "config-error";
    case ReportStatus::NonConvergence: return "non-convergence";
    case ReportStatus::Inconsistent: return "inconsistent";
    case ReportStatus::UnderDetermined: return "under-determined";
  }
  return "?";
}

/// Process exit code: 0 pass, 1 mathematical failure, 2 configuration
/// error, 3 numeric non-convergence.
inline int exit_code(ReportStatus s) {
  switch (s) {
    case ReportStatus::Pass: return 0;
    case ReportStatus::ConfigError: return 2;
    case ReportStatus::NonConvergence: return 3;
    default: return 1;
  }
}

struct Report {
  std::string command;
  json params = json::object();
  ReportStatus status = ReportStatus::Pass;
  std::vector<json> items;
  /// Extra top-level fields (search solutions, coefficient tables).
  json extra = json::object();
};

inline json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["status"] = to_string(r.status);
  j["items"] = json::array();
  for (const auto& it : r.items) j["items"].push_back(it);
  for (const auto& [k, v] : r.extra.items()) j[k] = v;
  return j;
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command << ": " << to_string(r.status) << "\n";
  for (const auto& it : r.items) {
    os << "  " << it.value("name", std::string("item"));
    if (it.contains("n")) os << " n=" << it["n"].dump();
    if (it.contains("block")) os << " block=" << it["block"].get<std::string>();
    if (it.contains("status")) os << " [" << it["status"].get<std::string>() << "]";
    if (it.contains("residual")) os << " residual=" << it["residual"].dump();
    if (it.contains("expected")) os << " expected=" << it["expected"].dump();
    if (it.contains("actual")) os << " actual=" << it["actual"].dump();
    if (it.contains("tolerance")) os << " tolerance=" << it["tolerance"].dump();
    if (it.contains("difference")) os << " |diff|=" << it["difference"].dump();
    if (it.contains("last_term")) os << " last_term=" << it["last_term"].dump();
    if (it.contains("extrapolated_difference")) os << " extrapolated_|diff|=" << it["extrapolated_difference"].dump();
    os << "\n";
  }
  for (const auto& [k, v] : r.extra.items()) os << k << ": " << v.dump(2) << "\n";
  return os.str();
}

inline std::string latex_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#') out += '\\';
    out += c;
  }
  return out;
}

inline std::string render_latex(const Report& r) {
  std::ostringstream os;
  os << "% " << r.command << ": " << to_string(r.status) << "\n\\begin{itemize}\n";
  for (const auto& it : r.items) {
    os << "  \\item " << latex_escape(it.value("name", std::string("item")));
    if (it.contains("n")) os << ", $n=" << it["n"].dump() << "$";
    if (it.contains("status")) os << ": " << it["status"].get<std::string>();
    os << "\n";
  }
  os << "\\end{itemize}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Report items

inline json residual_item(const std::string& name, const ResidualItem& it) {
  json j;
  j["name"] = name;
  j["n"] = it.n;
  j["status"] = it.passed() ? "pass" : "fail";
  j["residual"] = to_json(it.residual);
  return j;
}

inline json check_item(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["status"] = to_string(c.status);
  j["exact"] = c.exact;
  j["expected"] = c.rhs;
  j["actual"] = c.lhs;
  if (!c.exact) {
    j["difference"] = c.difference;
    j["tolerance"] = c.tolerance;
    j["last_term"] = c.last_term;
    if (c.extrapolated_difference) j["extrapolated_difference"] = *c.extrapolated_difference;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Coefficient tables

struct CoefficientTable {
  std::string family;
  Rational alpha;
  std::string symbol;  ///< "a", "b", "c", ...
  std::vector<std::pair<std::int64_t, Poly>> entries;
};

inline json to_json(const CoefficientTable& t) {
  json j;
  j["family"] = t.family;
  j["alpha"] = to_json(t.alpha);
  json c = json::object();
  for (const auto& [i, p] : t.entries) c[t.symbol + "_" + std::to_string(i)] = to_string(p);
  j["coefficients"] = c;
  return j;
}

inline CoefficientTable table_from_json(const json& j) {
  CoefficientTable t;
  t.family = j.at("family").get<std::string>();
  t.alpha = Rational::parse(j.at("alpha").get<std::string>());
  for (const auto& [key, value] : j.at("coefficients").items()) {
    const auto us = key.rfind('_');
    if (us == std::string::npos) throw std::invalid_argument("table_from_json: bad key '" + key + "'");
    t.symbol = key.substr(0, us);
    t.entries.emplace_back(std::stoll(key.substr(us + 1)), parse_poly(value.get<std::string>()));
  }
  return t;
}

/// Aligned equations "c_{i}(x) &= ... \\".
inline std::string to_latex(const CoefficientTable& t) {
  std::ostringstream os;
  os << "% " << t.family << ", alpha = " << t.alpha << "\n\\begin{aligned}\n";
  for (std::size_t k = 0; k < t.entries.size(); ++k) {
    const auto& [i, p] = t.entries[k];
    os << "  " << t.symbol << "_{" << i << "}(x) &= " << to_latex(p) << (k + 1 < t.entries.size() ? " \\\\" : "") << "\n";
  }
  os << "\\end{aligned}\n";
  return os.str();
}

/// One operator block written out as "c_0 y + (c_1) y' + ...", with the
/// (n-dependent) order-zero term supplied by the caller as LaTeX.
inline std::string operator_latex(const CoefficientTable& t, const std::string& order_zero) {
  std::ostringstream os;
  os << order_zero << "\\,y";
  for (const auto& [i, p] : t.entries) {
    if (i == 0 || p.is_zero()) continue;
    os << " + \\left(" << to_latex(p) << "\\right)y^{(" << i << ")}";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Search configuration

inline std::vector<std::int64_t> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string_view::npos) return {std::stoll(std::string(s))};
    const std::int64_t a = std::stoll(std::string(s.substr(0, dots)));
    const std::int64_t b = std::stoll(std::string(s.substr(dots + 2)));
    if (b < a) throw std::invalid_argument("range end before start");
    std::vector<std::int64_t> v;
    for (std::int64_t n = a; n <= b; ++n) v.push_back(n);
    return v;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range '" + std::string(s) + "' (expected a..b)");
  }
}

/// A list of degrees: "a..b", an integer, or an array of either.
inline std::vector<std::int64_t> degrees_from_json(const json& j) {
  if (j.is_string()) return parse_range(j.get<std::string>());
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  std::vector<std::int64_t> out;
  for (const auto& e : j) {
    auto part = degrees_from_json(e);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw std::invalid_argument("expected an exact rational (integer or \"p/q\" string)");
}

inline FamilyKind family_kind_from_string(std::string_view s) {
  for (FamilyKind k : {FamilyKind::LaguerreClassical, FamilyKind::LaguerreM, FamilyKind::LaguerreMN,
                       FamilyKind::JacobiClassical, FamilyKind::JacobiMN, FamilyKind::JacobiSymmetricMM})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

/// Loads a SearchProblem:
/// {
///   "family": "laguerre-m", "alpha": "0", "beta": "0",
///   "fixed_classical": true,
///   "blocks": [{"block": "M", "max_order": 4, "degree_bounds": [0,1,2,3,4],
///               "divisible_by_one_minus_x2": false, "sum_vanishing": false}],
///   "order_zero": "per-n" | {"polynomial_degree": 4},
///   "n_train": "0..12", "n_holdout": "13..20",
///   "pins": [{"block": "M", "n": 1, "value": "0"}], "margin": 3
/// }
inline SearchProblem search_problem_from_json(const json& j) {
  SearchProblem p;
  const FamilyKind kind = family_kind_from_string(j.at("family").get<std::string>());
  const Rational alpha = rational_from_json(j.value("alpha", json(0)));
  const Rational beta = j.contains("beta") ? rational_from_json(j["beta"]) : alpha;
  p.family = FamilyParams(kind, alpha, beta);
  p.fixed_classical = j.value("fixed_classical", true);
  for (const auto& b : j.at("blocks")) {
    UnknownBlock u;
    u.key = parse_block_key(b.at("block").get<std::string>());
    u.max_order = b.at("max_order").get<std::int64_t>();
    if (u.max_order < 0) throw std::invalid_argument("max_order must be nonnegative");
    if (b.contains("degree_bounds")) u.degree_bounds = b["degree_bounds"].get<std::vector<std::int64_t>>();
    u.divisible_by_one_minus_x2 = b.value("divisible_by_one_minus_x2", false);
    u.sum_vanishing = b.value("sum_vanishing", false);
    p.blocks.push_back(std::move(u));
  }
  if (j.contains("order_zero")) {
    const json& oz = j["order_zero"];
    if (oz.is_object()) {
      p.order_zero_mode = OrderZeroMode::PolynomialInN;
      p.order_zero_degree = oz.at("polynomial_degree").get<std::int64_t>();
    } else if (oz.get<std::string>() != "per-n") {
      throw std::invalid_argument("order_zero must be \"per-n\" or {\"polynomial_degree\": k}");
    }
  }
  p.n_train = degrees_from_json(j.at("n_train"));
  if (j.contains("n_holdout")) p.n_holdout = degrees_from_json(j["n_holdout"]);
  if (j.contains("pins"))
    for (const auto& pin : j["pins"])
      p.pins.push_back({parse_block_key(pin.at("block").get<std::string>()), pin.at("n").get<std::int64_t>(),
                        rational_from_json(pin.at("value"))});
  p.margin = j.value("margin", std::int64_t{3});
  return p;
}

/// Coefficients of every block of a search solution as strings.
inline json pencil_to_json(const SearchProblem& p, const OperatorPencil& op) {
  json j = json::object();
  for (const auto& b : p.blocks) {
    json blk;
    json coeffs = json::object();
    for (std::int64_t i = 1; i <= b.max_order; ++i) coeffs["c_" + std::to_string(i)] = to_string(op.coefficient(b.key, i, 0));
    blk["coefficients"] = coeffs;
    json zero = json::object();
    for (std::int64_t n : p.n_train) zero[std::to_string(n)] = op.coefficient(b.key, 0, n)[0].str();
    blk["order_zero"] = zero;
    j[to_string(b.key)] = blk;
  }
  return j;
}

inline json to_json(const SearchSolution& s) {
  json j;
  j["status"] = to_string(s.status);
  j["unknowns"] = s.unknowns;
  j["constraints"] = s.constraints;
  if (!s.solved()) return j;
  j["rank"] = s.rank;
  j["nullspace_dim"] = s.nullspace_dim();
  j["under_determined"] = s.under_determined;
  j["train_verified"] = s.train_verified;
  j["particular"] = pencil_to_json(s.problem, s.particular_pencil());
  j["particular_holdout"] = s.particular_holdout;
  j["basis"] = json::array();
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    json b;
    b["pencil"] = pencil_to_json(s.problem, s.basis_pencil(k));
    b["holdout_pass"] = s.basis_holdout[k];
    j["basis"].push_back(b);
  }
  return j;
}

}  // namespace infdiff

#endif  // INFDIFF_IO_HPP
