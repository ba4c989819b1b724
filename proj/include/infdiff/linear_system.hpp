#ifndef INFDIFF_LINEAR_SYSTEM_HPP
#define INFDIFF_LINEAR_SYSTEM_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "infdiff/rational.hpp"

namespace infdiff {

/// One equation sum_j entries[j].second * u_{entries[j].first} = rhs.
struct SparseRow {
  std::vector<std::pair<std::size_t, Rational>> entries;
  Rational rhs;
};

/// Sparse linear system over Q with a fixed number of unknowns.
class ExactLinearSystem {
public:
  explicit ExactLinearSystem(std::size_t columns = 0) : columns_(columns) {}

  [[nodiscard]] std::size_t columns() const { return columns_; }
  [[nodiscard]] const std::vector<SparseRow>& rows() const { return rows_; }

  /// Adds a row; duplicate column indices are summed and zeros dropped.
  /// Rows that are identically 0 = 0 are skipped.
  void add_row(std::vector<std::pair<std::size_t, Rational>> entries, Rational rhs = Rational(0)) {
    std::map<std::size_t, Rational> acc;
    for (auto& [c, v] : entries) {
      if (c >= columns_) throw std::out_of_range("ExactLinearSystem::add_row: column out of range");
      acc[c] += v;
    }
    SparseRow row;
    for (auto& [c, v] : acc)
      if (!v.is_zero()) row.entries.emplace_back(c, v);
    row.rhs = std::move(rhs);
    if (row.entries.empty() && row.rhs.is_zero()) return;
    rows_.push_back(std::move(row));
  }

  /// True when every row holds for the given assignment.
  [[nodiscard]] bool satisfied_by(const std::vector<Rational>& u) const {
    for (const auto& r : rows_) {
      Rational s(0);
      for (const auto& [c, v] : r.entries) s += v * u.at(c);
      if (s != r.rhs) return false;
    }
    return true;
  }

private:
  std::size_t columns_;
  std::vector<SparseRow> rows_;
};

enum class SolveStatus { Consistent, Inconsistent };

/// Solution set particular + span(basis).  Basis vector k has a 1 in
/// free column free_columns[k] and zeros in the other free columns.
struct AffineSolution {
  SolveStatus status = SolveStatus::Consistent;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  [[nodiscard]] std::size_t rank() const { return pivot_columns.size(); }
  [[nodiscard]] std::size_t nullspace_dim() const { return basis.size(); }
  [[nodiscard]] bool consistent() const { return status == SolveStatus::Consistent; }
};

namespace detail {

/// Integer row kept primitive (content 1) with a positive leading entry.
struct IntRow {
  std::vector<std::pair<std::size_t, mpz_class>> e;
  mpz_class rhs;

  [[nodiscard]] std::size_t lead() const { return e.front().first; }
  [[nodiscard]] const mpz_class& lead_value() const { return e.front().second; }

  [[nodiscard]] std::size_t bits() const {
    std::size_t b = mpz_sizeinbase(rhs.get_mpz_t(), 2);
    for (const auto& [c, v] : e) b += mpz_sizeinbase(v.get_mpz_t(), 2);
    return b;
  }

  void make_primitive() {
    mpz_class g = rhs;
    for (const auto& [c, v] : e) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
    }
    if (g != 0 && g != 1) {
      for (auto& [c, v] : e) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(rhs.get_mpz_t(), rhs.get_mpz_t(), g.get_mpz_t());
    }
    if (!e.empty() && sgn(e.front().second) < 0) {
      for (auto& [c, v] : e) v = -v;
      rhs = -rhs;
    }
  }

  [[nodiscard]] const mpz_class* find(std::size_t col) const {
    auto it = std::lower_bound(e.begin(), e.end(), col, [](const auto& p, std::size_t c) { return p.first < c; });
    return (it != e.end() && it->first == col) ? &it->second : nullptr;
  }
};

inline IntRow to_int_row(const SparseRow& r) {
  mpz_class l = r.rhs.denominator();
  for (const auto& [c, v] : r.entries) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.denominator().get_mpz_t());
  IntRow out;
  out.e.reserve(r.entries.size());
  for (const auto& [c, v] : r.entries) out.e.emplace_back(c, v.numerator() * (l / v.denominator()));
  out.rhs = r.rhs.numerator() * (l / r.rhs.denominator());
  out.make_primitive();
  return out;
}

/// Eliminates column `col` from `target` using `pivot`:
/// target <- (p/g) target - (t/g) pivot with p, t the entries at col.
inline void eliminate(IntRow& target, const IntRow& pivot, std::size_t col) {
  const mpz_class* tv = target.find(col);
  const mpz_class* pv = pivot.find(col);
  if (tv == nullptr || pv == nullptr) return;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), tv->get_mpz_t(), pv->get_mpz_t());
  const mpz_class ft = *pv / g;
  const mpz_class fp = *tv / g;
  std::vector<std::pair<std::size_t, mpz_class>> out;
  out.reserve(target.e.size() + pivot.e.size());
  auto a = target.e.begin();
  auto b = pivot.e.begin();
  while (a != target.e.end() || b != pivot.e.end()) {
    if (b == pivot.e.end() || (a != target.e.end() && a->first < b->first)) {
      out.emplace_back(a->first, ft * a->second);
      ++a;
    } else if (a == target.e.end() || b->first < a->first) {
      out.emplace_back(b->first, -fp * b->second);
      ++b;
    } else {
      mpz_class v = ft * a->second - fp * b->second;
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  target.e = std::move(out);
  target.rhs = ft * target.rhs - fp * pivot.rhs;
  target.make_primitive();
}

}  // namespace detail

/// Exact solution set of the system by fraction-free elimination.
///
/// Rows are cleared to primitive integer vectors and reduced one at a time
/// against the current echelon rows (cross-multiplication followed by
/// content removal, so no rational arithmetic happens inside the loop).
/// When an incoming row shares its leading column with a stored pivot the
/// row with the smaller total bit length becomes the pivot.  Pivot columns
/// are therefore determined by the fixed column order and the input row
/// order alone, and identical inputs give identical outputs.
inline AffineSolution solve_nullspace(const ExactLinearSystem& sys) {
  using detail::IntRow;
  std::map<std::size_t, IntRow> pivots;
  AffineSolution sol;
  for (const auto& src : sys.rows()) {
    IntRow row = detail::to_int_row(src);
    while (true) {
      if (row.e.empty()) {
        if (row.rhs != 0) {
          sol.status = SolveStatus::Inconsistent;
          return sol;
        }
        break;
      }
      auto it = pivots.find(row.lead());
      if (it == pivots.end()) {
        const std::size_t lead = row.lead();
        pivots.emplace(lead, std::move(row));
        break;
      }
      if (row.bits() < it->second.bits()) std::swap(row, it->second);
      detail::eliminate(row, it->second, it->first);
    }
  }

  // Back-substitution to reduced echelon form.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const std::size_t col = it->first;
    for (auto jt = pivots.begin(); jt != pivots.end() && jt->first < col; ++jt) detail::eliminate(jt->second, it->second, col);
  }

  const std::size_t n = sys.columns();
  std::vector<bool> is_pivot(n, false);
  for (const auto& [c, r] : pivots) {
    is_pivot[c] = true;
    sol.pivot_columns.push_back(c);
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) sol.free_columns.push_back(c);

  sol.particular.assign(n, Rational(0));
  for (const auto& [c, r] : pivots) sol.particular[c] = Rational(r.rhs, r.lead_value());

  std::map<std::size_t, std::size_t> free_index;
  for (std::size_t k = 0; k < sol.free_columns.size(); ++k) free_index[sol.free_columns[k]] = k;
  sol.basis.assign(sol.free_columns.size(), std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 0; k < sol.free_columns.size(); ++k) sol.basis[k][sol.free_columns[k]] = Rational(1);
  for (const auto& [c, r] : pivots) {
    for (std::size_t j = 1; j < r.e.size(); ++j) {
      const auto [col, v] = r.e[j];
      auto f = free_index.find(col);
      if (f != free_index.end()) sol.basis[f->second][c] = -Rational(v, r.lead_value());
    }
  }
  return sol;
}

}  // namespace infdiff

#endif  // INFDIFF_LINEAR_SYSTEM_HPP
