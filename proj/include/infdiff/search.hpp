#ifndef INFDIFF_SEARCH_HPP
#define INFDIFF_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infdiff/linear_system.hpp"
#include "infdiff/pencil.hpp"

namespace infdiff {

// Coefficient search: posit unknown polynomial coefficients for some
// (M,N)-blocks of an operator, require the operator to annihilate the
// family for every training degree, and solve the resulting linear system
// exactly.

/// Unknown coefficients of one block: c_i(x) for i = 1..max_order with
/// deg c_i <= degree_bound(i), plus the order-zero coefficient.
struct UnknownBlock {
  BlockKey key;
  std::int64_t max_order = 0;
  /// Per-order degree bounds, indexed by order; missing entries use i + 1.
  std::vector<std::int64_t> degree_bounds;
  /// Restrict c_i(x) = (1 - x^2) q_i(x), with the bound applying to c_i.
  bool divisible_by_one_minus_x2 = false;
  /// Add the rows sum_{i>=1} c_i(x) = 0.
  bool sum_vanishing = false;

  [[nodiscard]] std::int64_t degree_bound(std::int64_t order) const {
    if (order < static_cast<std::int64_t>(degree_bounds.size()) && degree_bounds[static_cast<std::size_t>(order)] >= 0)
      return degree_bounds[static_cast<std::size_t>(order)];
    return order + 1;
  }
};

/// Order-zero unknowns are free scalars per degree n, or a polynomial in n
/// of bounded degree (which recovers closed forms such as n(n+1)/2).
enum class OrderZeroMode { PerN, PolynomialInN };

/// Pins the order-zero coefficient of a block at degree n.
struct OrderZeroPin {
  BlockKey key;
  std::int64_t n = 0;
  Rational value;
};

struct SearchProblem {
  FamilyParams family{FamilyKind::LaguerreMN, Rational(0)};
  /// Keep the classical second-order operator and its eigen term as the
  /// known part of the equation (moved to the right-hand side).  Without it
  /// the system is homogeneous.
  bool fixed_classical = true;
  std::vector<UnknownBlock> blocks;
  OrderZeroMode order_zero_mode = OrderZeroMode::PerN;
  std::int64_t order_zero_degree = 4;
  std::vector<std::int64_t> n_train;
  std::vector<std::int64_t> n_holdout;
  /// Normalization applied to the particular solution only: the nullspace is
  /// reported for the unpinned problem.
  std::vector<OrderZeroPin> pins;
  /// Extra training degrees required beyond the bare count estimate.
  std::int64_t margin = 3;
};

/// The fixed operator part of a problem (empty when homogeneous).
inline OperatorPencil fixed_pencil(const SearchProblem& p) {
  if (!p.fixed_classical) return {};
  if (is_jacobi(p.family.kind())) return pencil_jacobi_classical(p.family.alpha(), p.family.beta());
  return pencil_laguerre_classical(p.family.alpha());
}

enum class ColumnKind { Coefficient, OrderZero, OrderZeroPoly };

/// One unknown: coefficient of x^power in c_order (Coefficient), the
/// order-zero scalar at degree n (OrderZero), or the n^power coefficient of
/// the order-zero polynomial (OrderZeroPoly).
struct Column {
  ColumnKind kind;
  BlockKey key;
  std::int64_t order = 0;
  std::int64_t power = 0;
  std::int64_t n = 0;
};

inline std::string to_string(const Column& c) {
  switch (c.kind) {
    case ColumnKind::Coefficient:
      return to_string(c.key) + ":c" + std::to_string(c.order) + "[x^" + std::to_string(c.power) + "]";
    case ColumnKind::OrderZero: return to_string(c.key) + ":c0(n=" + std::to_string(c.n) + ")";
    case ColumnKind::OrderZeroPoly: return to_string(c.key) + ":c0[n^" + std::to_string(c.power) + "]";
  }
  return "?";
}

class ColumnLayout {
public:
  explicit ColumnLayout(const SearchProblem& p) {
    for (const auto& b : p.blocks) {
      for (std::int64_t i = 1; i <= b.max_order; ++i) {
        const std::int64_t top = b.degree_bound(i) - (b.divisible_by_one_minus_x2 ? 2 : 0);
        for (std::int64_t d = 0; d <= top; ++d) add({ColumnKind::Coefficient, b.key, i, d, 0});
      }
    }
    for (const auto& b : p.blocks) {
      if (p.order_zero_mode == OrderZeroMode::PerN) {
        for (std::int64_t n : p.n_train) add({ColumnKind::OrderZero, b.key, 0, 0, n});
      } else {
        for (std::int64_t k = 0; k <= p.order_zero_degree; ++k) add({ColumnKind::OrderZeroPoly, b.key, 0, k, 0});
      }
    }
  }

  [[nodiscard]] std::size_t size() const { return columns_.size(); }
  [[nodiscard]] const std::vector<Column>& columns() const { return columns_; }
  [[nodiscard]] const Column& operator[](std::size_t i) const { return columns_[i]; }

  [[nodiscard]] std::optional<std::size_t> coefficient(BlockKey key, std::int64_t order, std::int64_t power) const {
    return find(coeff_, std::tuple{key, order, power});
  }
  [[nodiscard]] std::optional<std::size_t> order_zero(BlockKey key, std::int64_t n) const {
    return find(zero_, std::pair{key, n});
  }
  [[nodiscard]] std::optional<std::size_t> order_zero_poly(BlockKey key, std::int64_t k) const {
    return find(zero_poly_, std::pair{key, k});
  }

private:
  template <typename Map, typename Key>
  static std::optional<std::size_t> find(const Map& m, const Key& k) {
    auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }
  void add(Column c) {
    const std::size_t idx = columns_.size();
    switch (c.kind) {
      case ColumnKind::Coefficient: coeff_[{c.key, c.order, c.power}] = idx; break;
      case ColumnKind::OrderZero: zero_[{c.key, c.n}] = idx; break;
      case ColumnKind::OrderZeroPoly: zero_poly_[{c.key, c.power}] = idx; break;
    }
    columns_.push_back(c);
  }
  std::vector<Column> columns_;
  std::map<std::tuple<BlockKey, std::int64_t, std::int64_t>, std::size_t> coeff_;
  std::map<std::pair<BlockKey, std::int64_t>, std::size_t> zero_;
  std::map<std::pair<BlockKey, std::int64_t>, std::size_t> zero_poly_;
};

/// Basis polynomial multiplying the unknown of a Coefficient column.
inline Poly column_basis(const UnknownBlock& b, std::int64_t power) {
  Poly m = Poly::monomial(Rational(1), static_cast<std::size_t>(power));
  if (b.divisible_by_one_minus_x2) m *= Poly({Rational(1), Rational(0), Rational(-1)});
  return m;
}

struct AssembledSystem {
  ColumnLayout layout;
  ExactLinearSystem system;
  std::size_t residual_rows = 0;  ///< rows coming from the residual (not side conditions)
};

namespace detail {

/// Rows "residual coefficient of M^a N^b x^k vanishes" for one degree n.
/// `zero_columns(key)` lists the (column, weight) pairs carrying the
/// order-zero unknown of a block at this n; `known` is the fixed part of
/// the residual.
template <typename ZeroColumns>
std::vector<SparseRow> residual_rows(const SearchProblem& p, const ColumnLayout& layout, const MNPoly& y,
                                     const MNPoly& known, ZeroColumns&& zero_columns) {
  std::map<std::pair<BlockKey, std::int64_t>, std::vector<std::pair<std::size_t, Rational>>> acc;
  const int deg = y.max_degree();
  std::vector<MNPoly> d{y};
  for (int i = 1; i <= deg; ++i) d.push_back(derivative(d.back()));

  for (const auto& b : p.blocks) {
    for (const auto& [col, weight] : zero_columns(b.key)) {
      for (const auto& [yk, poly] : y.blocks())
        for (std::size_t k = 0; k < poly.size(); ++k)
          if (!poly[k].is_zero()) acc[{yk + b.key, static_cast<std::int64_t>(k)}].emplace_back(col, poly[k] * weight);
    }
    const std::int64_t top = std::min<std::int64_t>(b.max_order, deg);
    for (std::int64_t i = 1; i <= top; ++i) {
      const std::int64_t bound = b.degree_bound(i) - (b.divisible_by_one_minus_x2 ? 2 : 0);
      for (std::int64_t pw = 0; pw <= bound; ++pw) {
        const auto col = layout.coefficient(b.key, i, pw);
        if (!col) continue;
        const Poly basis = column_basis(b, pw);
        for (const auto& [yk, poly] : d[static_cast<std::size_t>(i)].blocks()) {
          const Poly prod = poly * basis;
          for (std::size_t k = 0; k < prod.size(); ++k)
            if (!prod[k].is_zero()) acc[{yk + b.key, static_cast<std::int64_t>(k)}].emplace_back(*col, prod[k]);
        }
      }
    }
  }
  for (const auto& [yk, poly] : known.blocks())
    for (std::size_t k = 0; k < poly.size(); ++k) acc[{yk, static_cast<std::int64_t>(k)}];

  std::vector<SparseRow> rows;
  for (auto& [where, entries] : acc) {
    SparseRow r;
    r.entries = std::move(entries);
    r.rhs = -known.block(where.first)[static_cast<std::size_t>(where.second)];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<std::pair<std::size_t, Rational>> training_zero_columns(const SearchProblem& p,
                                                                           const ColumnLayout& layout, BlockKey key,
                                                                           std::int64_t n) {
  std::vector<std::pair<std::size_t, Rational>> out;
  if (p.order_zero_mode == OrderZeroMode::PerN) {
    if (auto c = layout.order_zero(key, n)) out.emplace_back(*c, Rational(1));
  } else {
    Rational nk(1);
    for (std::int64_t k = 0; k <= p.order_zero_degree; ++k) {
      if (auto c = layout.order_zero_poly(key, k)) out.emplace_back(*c, nk);
      nk *= Rational(n);
    }
  }
  return out;
}

inline void add_side_conditions(const SearchProblem& p, const ColumnLayout& layout, ExactLinearSystem& sys) {
  for (const auto& b : p.blocks) {
    if (!b.sum_vanishing) continue;
    std::map<std::int64_t, std::vector<std::pair<std::size_t, Rational>>> by_power;
    for (std::int64_t i = 1; i <= b.max_order; ++i) {
      const std::int64_t bound = b.degree_bound(i) - (b.divisible_by_one_minus_x2 ? 2 : 0);
      for (std::int64_t pw = 0; pw <= bound; ++pw) {
        const auto col = layout.coefficient(b.key, i, pw);
        const Poly basis = column_basis(b, pw);
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (!basis[k].is_zero()) by_power[static_cast<std::int64_t>(k)].emplace_back(*col, basis[k]);
      }
    }
    for (auto& [k, entries] : by_power) sys.add_row(std::move(entries));
  }
}

inline void add_pins(const SearchProblem& p, const ColumnLayout& layout, ExactLinearSystem& sys) {
  for (const auto& pin : p.pins) {
    const auto cols = training_zero_columns(p, layout, pin.key, pin.n);
    if (cols.empty()) throw std::invalid_argument("search: pin refers to a block or degree outside the ansatz");
    sys.add_row(cols, pin.value);
  }
}

}  // namespace detail

/// Builds the exact system: one row per (n, block, x-power) residual
/// coefficient, one column per unknown, known parts on the right.
inline AssembledSystem assemble(const SearchProblem& p) {
  if (p.n_train.empty()) throw std::invalid_argument("assemble: empty n_train");
  for (const auto& b : p.blocks)
    if (b.max_order < 0) throw std::invalid_argument("assemble: negative max_order");
  AssembledSystem out{ColumnLayout(p), ExactLinearSystem(0), 0};
  out.system = ExactLinearSystem(out.layout.size());
  const OperatorPencil fixed = fixed_pencil(p);
  // Rows for each degree are built concurrently and appended in n_train
  // order, so the system (and hence the pivoting) does not depend on timing.
  std::vector<std::future<std::vector<SparseRow>>> per_n;
  for (std::int64_t n : p.n_train) {
    per_n.push_back(std::async(std::launch::async, [&p, &out, &fixed, n] {
      const MNPoly y = family_member(p.family, n).value;
      const MNPoly known = apply(fixed, y, n);
      return detail::residual_rows(p, out.layout, y, known, [&](BlockKey key) {
        return detail::training_zero_columns(p, out.layout, key, n);
      });
    }));
  }
  for (auto& f : per_n) {
    auto rows = f.get();
    for (auto& r : rows) {
      const std::size_t before = out.system.rows().size();
      out.system.add_row(std::move(r.entries), std::move(r.rhs));
      out.residual_rows += out.system.rows().size() - before;
    }
  }
  detail::add_side_conditions(p, out.layout, out.system);
  return out;
}

/// Unknown part of the operator described by an assignment vector.  Per-n
/// order-zero values are only defined on the training degrees; elsewhere the
/// order-zero term is left out (see holdout checks).
inline OperatorPencil pencil_from_vector(const SearchProblem& p, const ColumnLayout& layout,
                                         const std::vector<Rational>& u) {
  OperatorPencil pencil;
  for (const auto& b : p.blocks) {
    std::vector<Poly> by_order(static_cast<std::size_t>(b.max_order) + 1);
    for (std::int64_t i = 1; i <= b.max_order; ++i) {
      const std::int64_t bound = b.degree_bound(i) - (b.divisible_by_one_minus_x2 ? 2 : 0);
      for (std::int64_t pw = 0; pw <= bound; ++pw)
        if (auto c = layout.coefficient(b.key, i, pw)) by_order[static_cast<std::size_t>(i)] += column_basis(b, pw) * u[*c];
    }
    std::map<std::int64_t, Rational> per_n;
    std::vector<Rational> poly_n;
    if (p.order_zero_mode == OrderZeroMode::PerN) {
      for (std::int64_t n : p.n_train)
        if (auto c = layout.order_zero(b.key, n)) per_n[n] = u[*c];
    } else {
      for (std::int64_t k = 0; k <= p.order_zero_degree; ++k)
        if (auto c = layout.order_zero_poly(b.key, k)) poly_n.push_back(u[*c]);
    }
    const bool per = p.order_zero_mode == OrderZeroMode::PerN;
    pencil.set_block(b.key, detail::table_block(by_order, [per, per_n, poly = Poly(poly_n)](std::int64_t n) {
                       if (!per) return Poly::constant(poly.evaluate(Rational(n)));
                       auto it = per_n.find(n);
                       return it == per_n.end() ? Poly{} : Poly::constant(it->second);
                     }));
  }
  return pencil;
}

struct HoldoutItem {
  std::int64_t n = 0;
  bool passed = false;
  /// Residual with the order-zero term omitted when it had to be fitted
  /// (per-n mode) and the fit failed; zero on success.
  MNPoly residual;
};

/// Checks one assignment at a degree outside the training set.  In per-n
/// mode the order-zero scalars for that degree are unknown, so the check
/// asks whether some choice of them makes the residual vanish.
inline HoldoutItem holdout_check(const SearchProblem& p, const ColumnLayout& layout, const std::vector<Rational>& u,
                                 bool include_fixed, std::int64_t n) {
  const MNPoly y = family_member(p.family, n).value;
  OperatorPencil op = pencil_from_vector(p, layout, u);
  if (include_fixed) op = fixed_pencil(p) + op;
  HoldoutItem item{n, false, apply(op, y, n)};
  if (p.order_zero_mode == OrderZeroMode::PolynomialInN) {
    item.passed = item.residual.is_zero();
    return item;
  }
  // Fit the per-block order-zero scalars at this n: unknowns are one per block.
  std::map<BlockKey, std::size_t> zero_col;
  for (const auto& b : p.blocks) zero_col.emplace(b.key, zero_col.size());
  ExactLinearSystem sys(zero_col.size());
  std::map<std::pair<BlockKey, std::int64_t>, std::vector<std::pair<std::size_t, Rational>>> acc;
  for (const auto& [key, col] : zero_col)
    for (const auto& [yk, poly] : y.blocks())
      for (std::size_t k = 0; k < poly.size(); ++k)
        if (!poly[k].is_zero()) acc[{yk + key, static_cast<std::int64_t>(k)}].emplace_back(col, poly[k]);
  for (const auto& [yk, poly] : item.residual.blocks())
    for (std::size_t k = 0; k < poly.size(); ++k) acc[{yk, static_cast<std::int64_t>(k)}];
  for (auto& [where, entries] : acc) sys.add_row(std::move(entries), -item.residual.block(where.first)[static_cast<std::size_t>(where.second)]);
  item.passed = solve_nullspace(sys).consistent();
  if (item.passed) item.residual = MNPoly{};
  return item;
}

enum class SearchStatus { Solved, Inconsistent };

inline std::string to_string(SearchStatus s) { return s == SearchStatus::Solved ? "solved" : "inconsistent"; }

struct SearchSolution {
  SearchSolution(SearchProblem p, ColumnLayout l) : problem(std::move(p)), layout(std::move(l)) {}

  SearchProblem problem;
  ColumnLayout layout;
  SearchStatus status = SearchStatus::Solved;
  /// Particular solution (normalized by the problem's pins, if any).
  std::vector<Rational> particular;
  /// Nullspace basis of the unpinned system.
  std::vector<std::vector<Rational>> basis;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t rank = 0;
  /// Fewer training degrees than the unknown count calls for.
  bool under_determined = false;
  /// Every returned vector re-checked by applying the operator to the
  /// training family (independent of the matrix).
  bool train_verified = false;
  std::vector<bool> particular_holdout;              ///< per holdout n
  std::vector<std::vector<bool>> basis_holdout;      ///< per basis vector, per holdout n

  [[nodiscard]] std::size_t nullspace_dim() const { return basis.size(); }
  [[nodiscard]] bool solved() const { return status == SearchStatus::Solved; }

  /// Unknown part of the operator for the particular solution.
  [[nodiscard]] OperatorPencil particular_pencil() const { return pencil_from_vector(problem, layout, particular); }
  /// Full operator: fixed part plus the particular solution.
  [[nodiscard]] OperatorPencil full_pencil() const { return fixed_pencil(problem) + particular_pencil(); }
  [[nodiscard]] OperatorPencil basis_pencil(std::size_t k) const { return pencil_from_vector(problem, layout, basis.at(k)); }

  /// Coefficient c_i of a block in the particular solution.
  [[nodiscard]] Poly coefficient(BlockKey key, std::int64_t order) const {
    return particular_pencil().coefficient(key, order, 0);
  }
  [[nodiscard]] Rational order_zero(BlockKey key, std::int64_t n) const {
    return particular_pencil().coefficient(key, 0, n)[0];
  }
};

namespace detail {
inline bool train_check(const SearchProblem& p, const ColumnLayout& layout, const std::vector<Rational>& u,
                        bool include_fixed) {
  OperatorPencil op = pencil_from_vector(p, layout, u);
  if (include_fixed) op = fixed_pencil(p) + op;
  for (std::int64_t n : p.n_train)
    if (!apply(op, family_member(p.family, n).value, n).is_zero()) return false;
  return true;
}

/// Scales v so that its first nonzero entry is 1.
inline void normalize_leading(std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) {
      const Rational s = x;
      for (auto& y : v) y /= s;
      return;
    }
}
}  // namespace detail

/// Solves an assembled problem, then re-verifies every returned vector on
/// the training degrees and checks them on the holdout degrees.
inline SearchSolution solve_search(const SearchProblem& p) {
  AssembledSystem as = assemble(p);
  SearchSolution sol(p, as.layout);
  sol.unknowns = as.layout.size();
  sol.constraints = as.system.rows().size();

  const std::size_t per_n = std::max<std::size_t>(1, as.residual_rows / p.n_train.size());
  const std::size_t needed = (sol.unknowns + per_n - 1) / per_n + static_cast<std::size_t>(std::max<std::int64_t>(0, p.margin));
  sol.under_determined = p.n_train.size() < needed && sol.constraints < sol.unknowns + static_cast<std::size_t>(p.margin);

  AffineSolution affine = solve_nullspace(as.system);
  if (!affine.consistent()) {
    sol.status = SearchStatus::Inconsistent;
    return sol;
  }
  sol.rank = affine.rank();
  sol.basis = std::move(affine.basis);
  for (auto& v : sol.basis) detail::normalize_leading(v);
  sol.particular = std::move(affine.particular);
  if (!p.pins.empty()) {
    ExactLinearSystem pinned = as.system;
    detail::add_pins(p, as.layout, pinned);
    AffineSolution normalized = solve_nullspace(pinned);
    if (!normalized.consistent()) throw std::invalid_argument("solve_search: normalization pins are inconsistent");
    sol.particular = std::move(normalized.particular);
  }

  sol.train_verified = detail::train_check(p, sol.layout, sol.particular, p.fixed_classical);
  for (const auto& v : sol.basis) sol.train_verified = sol.train_verified && detail::train_check(p, sol.layout, v, false);

  for (std::int64_t n : p.n_holdout) sol.particular_holdout.push_back(holdout_check(p, sol.layout, sol.particular, p.fixed_classical, n).passed);
  for (const auto& v : sol.basis) {
    std::vector<bool> flags;
    for (std::int64_t n : p.n_holdout) flags.push_back(holdout_check(p, sol.layout, v, false, n).passed);
    sol.basis_holdout.push_back(std::move(flags));
  }
  return sol;
}

enum class ValidationStatus { Validated, TrainOnlyArtifact, NotValidated };

inline std::string to_string(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::Validated: return "validated";
    case ValidationStatus::TrainOnlyArtifact: return "train-only artifact";
    case ValidationStatus::NotValidated: return "not validated";
  }
  return "?";
}

struct CrossValidation {
  ValidationStatus status = ValidationStatus::NotValidated;
  std::vector<HoldoutItem> particular;
  std::vector<std::vector<HoldoutItem>> basis;
};

/// Re-applies every solution operator to the held-out degrees.
inline CrossValidation cross_validate(const SearchSolution& sol, const std::vector<std::int64_t>& n_holdout) {
  CrossValidation cv;
  if (n_holdout.empty() || !sol.solved()) return cv;
  bool ok = true;
  for (std::int64_t n : n_holdout) {
    cv.particular.push_back(holdout_check(sol.problem, sol.layout, sol.particular, sol.problem.fixed_classical, n));
    ok = ok && cv.particular.back().passed;
  }
  for (const auto& v : sol.basis) {
    std::vector<HoldoutItem> items;
    for (std::int64_t n : n_holdout) {
      items.push_back(holdout_check(sol.problem, sol.layout, v, false, n));
      ok = ok && items.back().passed;
    }
    cv.basis.push_back(std::move(items));
  }
  cv.status = ok ? ValidationStatus::Validated : ValidationStatus::TrainOnlyArtifact;
  return cv;
}

/// Coordinates of an operator in the ansatz of a problem, or nullopt when
/// the operator does not fit (a coefficient outside the degree bounds, an
/// order above max_order that matters on the training degrees, or a fixed
/// block that differs from the problem's known part).  `candidate` is the
/// full operator, fixed part included.
inline std::optional<std::vector<Rational>> coordinates(const SearchSolution& sol, const OperatorPencil& candidate,
                                                        bool include_fixed = true) {
  const SearchProblem& p = sol.problem;
  const OperatorPencil fixed = include_fixed ? fixed_pencil(p) : OperatorPencil{};
  std::int64_t top_n = 0;
  for (std::int64_t n : p.n_train) top_n = std::max(top_n, n);

  std::vector<Rational> u(sol.layout.size(), Rational(0));
  auto unknown_block = [&](BlockKey k) -> const UnknownBlock* {
    for (const auto& b : p.blocks)
      if (b.key == k) return &b;
    return nullptr;
  };
  std::vector<BlockKey> keys;
  for (const auto& [k, b] : candidate.blocks()) keys.push_back(k);
  for (const auto& [k, b] : fixed.blocks()) keys.push_back(k);
  keys.push_back(BlockKey{});
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  for (BlockKey key : keys) {
    const UnknownBlock* b = unknown_block(key);
    for (std::int64_t i = 1; i <= top_n; ++i) {
      const Poly diff = candidate.coefficient(key, i, 0) - fixed.coefficient(key, i, 0);
      if (b == nullptr || i > b->max_order) {
        if (!diff.is_zero()) return std::nullopt;
        continue;
      }
      if (diff.degree() > b->degree_bound(i)) return std::nullopt;
      Poly q = diff;
      if (b->divisible_by_one_minus_x2) {
        // Synthetic division by (1 - x^2) = -(x^2 - 1).
        std::vector<Rational> c(q.coefficients().begin(), q.coefficients().end());
        std::vector<Rational> quotient(c.size() > 2 ? c.size() - 2 : 0);
        for (std::size_t k = c.size(); k-- > 2;) {
          quotient[k - 2] = -c[k];
          c[k - 2] += c[k];
          c[k] = Rational(0);
        }
        if (!Poly(std::vector<Rational>(c.begin(), c.begin() + std::min<std::size_t>(2, c.size()))).is_zero())
          return std::nullopt;
        q = Poly(std::move(quotient));
      }
      for (std::size_t pw = 0; pw < q.size(); ++pw) {
        if (q[pw].is_zero()) continue;
        auto col = sol.layout.coefficient(key, i, static_cast<std::int64_t>(pw));
        if (!col) return std::nullopt;
        u[*col] = q[pw];
      }
    }
    for (std::int64_t n : p.n_train) {
      const Poly diff = candidate.coefficient(key, 0, n) - fixed.coefficient(key, 0, n);
      if (b == nullptr) {
        if (!diff.is_zero()) return std::nullopt;
        continue;
      }
      if (diff.degree() > 0) return std::nullopt;
      if (p.order_zero_mode == OrderZeroMode::PerN) {
        u[*sol.layout.order_zero(key, n)] = diff[0];
      }
    }
    if (b != nullptr && p.order_zero_mode == OrderZeroMode::PolynomialInN) {
      // Interpolate the order-zero values on the first degree+1 training n.
      ExactLinearSystem fit(static_cast<std::size_t>(p.order_zero_degree) + 1);
      for (std::int64_t n : p.n_train) {
        std::vector<std::pair<std::size_t, Rational>> e;
        Rational nk(1);
        for (std::int64_t k = 0; k <= p.order_zero_degree; ++k, nk *= Rational(n)) e.emplace_back(k, nk);
        fit.add_row(std::move(e), candidate.coefficient(key, 0, n)[0] - fixed.coefficient(key, 0, n)[0]);
      }
      const AffineSolution s = solve_nullspace(fit);
      if (!s.consistent()) return std::nullopt;
      for (std::int64_t k = 0; k <= p.order_zero_degree; ++k) u[*sol.layout.order_zero_poly(key, k)] = s.particular[static_cast<std::size_t>(k)];
    }
  }
  return u;
}

/// Solves sum_k lambda_k basis_k = target exactly.
inline bool in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& target) {
  ExactLinearSystem sys(basis.size());
  for (std::size_t r = 0; r < target.size(); ++r) {
    std::vector<std::pair<std::size_t, Rational>> e;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!basis[k][r].is_zero()) e.emplace_back(k, basis[k][r]);
    sys.add_row(std::move(e), target[r]);
  }
  return solve_nullspace(sys).consistent();
}

/// Membership of a full operator in the affine solution set.
inline bool contains(const SearchSolution& sol, const OperatorPencil& candidate) {
  if (!sol.solved()) return false;
  auto u = coordinates(sol, candidate, true);
  if (!u) return false;
  for (std::size_t i = 0; i < u->size(); ++i) (*u)[i] -= sol.particular[i];
  return in_span(sol.basis, *u);
}

/// Membership of a homogeneous operator (no fixed part) in the nullspace.
inline bool nullspace_contains(const SearchSolution& sol, const OperatorPencil& candidate) {
  if (!sol.solved()) return false;
  auto u = coordinates(sol, candidate, false);
  if (!u) return false;
  return in_span(sol.basis, *u);
}

namespace detail {
inline std::vector<std::int64_t> range(std::int64_t first, std::int64_t last) {
  std::vector<std::int64_t> v;
  for (std::int64_t n = first; n <= last; ++n) v.push_back(n);
  return v;
}
}  // namespace detail

/// M sum a_i y^(i) + x y'' + (alpha+1-x) y' + n y = 0 on L_n^{alpha,M}.
inline SearchSolution search_laguerre_m_block(const Rational& alpha, std::int64_t max_order,
                                              std::vector<std::int64_t> degree_bounds,
                                              std::vector<std::int64_t> n_train,
                                              std::vector<std::int64_t> n_holdout) {
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::LaguerreM, alpha);
  p.blocks.push_back({{1, 0}, max_order, std::move(degree_bounds)});
  p.n_train = std::move(n_train);
  p.n_holdout = std::move(n_holdout);
  return solve_search(p);
}

/// Degree bounds deg c_i <= i for orders 0..max_order.
inline std::vector<std::int64_t> degree_at_most_order(std::int64_t max_order) {
  return detail::range(0, max_order);
}

struct SobolevOrders {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t mn = 0;
};

/// M sum a_i y^(i) + N sum b_i y^(i) + MN sum c_i y^(i) + classical = 0 on
/// L_n^{alpha,M,N}, optionally with the sum-vanishing side conditions.
inline SearchSolution search_sobolev_laguerre(const Rational& alpha, SobolevOrders orders,
                                              std::vector<std::int64_t> n_train,
                                              std::vector<std::int64_t> n_holdout, bool sum_vanishing = false) {
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::LaguerreMN, alpha);
  p.blocks.push_back({{1, 0}, orders.m, {}, false, sum_vanishing});
  p.blocks.push_back({{0, 1}, orders.n, {}, false, sum_vanishing});
  p.blocks.push_back({{1, 1}, orders.mn, {}, false, sum_vanishing});
  p.n_train = std::move(n_train);
  p.n_holdout = std::move(n_holdout);
  return solve_search(p);
}

/// M sum a_i y^(i) + (1-x^2) y'' - 2(alpha+1) x y' + n(n+2alpha+1) y = 0 on
/// P_n^{alpha,alpha,M,M}.  With `normalize`, the particular solution has
/// order-zero coefficient 0 at n = 1, which removes the multiple of the
/// trivial family.
inline SearchSolution search_jacobi_symmetric(const Rational& alpha, std::int64_t max_order,
                                              std::vector<std::int64_t> n_train,
                                              std::vector<std::int64_t> n_holdout, bool normalize = true) {
  SearchProblem p;
  p.family = FamilyParams(FamilyKind::JacobiSymmetricMM, alpha);
  p.blocks.push_back({{1, 0}, max_order, {}});
  p.n_train = std::move(n_train);
  p.n_holdout = std::move(n_holdout);
  if (normalize && std::find(p.n_train.begin(), p.n_train.end(), 1) != p.n_train.end())
    p.pins.push_back({{1, 0}, 1, Rational(0)});
  return solve_search(p);
}

}  // namespace infdiff

#endif  // INFDIFF_SEARCH_HPP
