// infdiff: verify, search, identities and emit from the command line.
//
//   infdiff verify thm1 --alpha 0 --n 0..20
//   infdiff search laguerre-m --alpha 0
//   infdiff identities thm2 --alpha 1/2 --x 1 --terms 200 --tol 1e-8
//   infdiff emit jacobi-c --alpha 0 --imax 4 --format json
//
// Exit codes: 0 pass, 1 mathematical failure, 2 configuration error,
// 3 numeric non-convergence.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "infdiff/commands.hpp"

namespace {

using namespace infdiff;

struct Output {
  std::string format = "json";
  std::string path;
};

/// Writes to the given path, or stdout when empty; false on I/O failure.
bool write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  out.close();
  return static_cast<bool>(out);
}

std::string render(const Report& r, const std::string& format) {
  if (format == "text") return render_text(r);
  if (format == "latex") return render_latex(r);
  return to_json(r).dump(2) + "\n";
}

std::string render_tables(const std::vector<CoefficientTable>& tables, const std::string& format) {
  if (format == "latex") {
    std::string s;
    for (const auto& t : tables) s += to_latex(t);
    return s;
  }
  if (format == "text") {
    std::string s;
    for (const auto& t : tables) {
      s += t.family + " (alpha = " + t.alpha.str() + ")\n";
      for (const auto& [i, p] : t.entries) s += "  " + t.symbol + "_" + std::to_string(i) + " = " + to_string(p) + "\n";
    }
    return s;
  }
  if (tables.size() == 1) return to_json(tables.front()).dump(2) + "\n";
  json j = json::array();
  for (const auto& t : tables) j.push_back(to_json(t));
  return j.dump(2) + "\n";
}

int emit_report(const Report& r, const Output& out) {
  if (!write_text(out.path, render(r, out.format))) {
    std::cerr << "error: cannot write '" << out.path << "'\n";
    return 2;
  }
  return exit_code(r.status);
}

void add_common(CLI::App* sub, RunConfig& cfg, Output& out) {
  sub->add_option("--alpha", cfg.alpha, "alpha as an exact rational \"p/q\"");
  sub->add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "latex", "text"}));
  sub->add_option("--out", out.path, "output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact differential equations for generalized Laguerre and Jacobi polynomials"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key-value configuration file replacing flags");

  RunConfig cfg;
  Output out;

  auto* verify = app.add_subcommand("verify", "apply an operator to a run of family members");
  verify->add_option("suite", cfg.target, "suite")->required()->check(CLI::IsMember(verify_suites()));
  verify->add_option("--beta", cfg.beta, "beta as an exact rational (Jacobi)");
  verify->add_option("--n", cfg.n, "degree range a..b");
  add_common(verify, cfg, out);

  auto* search = app.add_subcommand("search", "rediscover operator coefficients by exact linear algebra");
  search->add_option("kind", cfg.target, "search kind")->required()->check(CLI::IsMember(search_kinds()));
  search->add_option("--n", cfg.n, "training degrees a..b");
  search->add_option("--holdout", cfg.n_holdout, "held-out degrees a..b");
  search->add_option("--max-order", cfg.max_order, "highest order of the unknown block");
  search->add_option("--problem", cfg.problem_file, "JSON search problem (kind 'config')");
  add_common(search, cfg, out);

  auto* identities = app.add_subcommand("identities", "exact and numeric coefficient identities");
  identities->add_option("identity", cfg.target, "identity")->required()->check(CLI::IsMember(identity_names()));
  identities->add_option("--n", cfg.n, "degree range a..b");
  identities->add_option("--x", cfg.x, "evaluation point as an exact rational");
  identities->add_option("--terms", cfg.terms, "partial-sum length for numeric checks");
  identities->add_option("--tol", cfg.tol, "tolerance for numeric checks");
  identities->add_option("--imax", cfg.imax, "largest index i");
  add_common(identities, cfg, out);

  auto* emit = app.add_subcommand("emit", "write coefficient tables");
  emit->add_option("table", cfg.target, "table")->required()->check(CLI::IsMember(emit_tables()));
  emit->add_option("--imax", cfg.imax, "largest order i");
  add_common(emit, cfg, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) return emit_report(cmd_verify(cfg), out);
    if (*search) return emit_report(cmd_search(cfg), out);
    if (*identities) return emit_report(cmd_identities(cfg), out);
    const auto tables = emit_tables(cfg);
    if (!write_text(out.path, render_tables(tables, out.format))) {
      std::cerr << "error: cannot write '" << out.path << "'\n";
      return 2;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
