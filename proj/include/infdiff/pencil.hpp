#ifndef INFDIFF_PENCIL_HPP
#define INFDIFF_PENCIL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infdiff/coefficients.hpp"
#include "infdiff/families.hpp"

namespace infdiff {

/// Linear differential operator of (formally) infinite order whose
/// coefficients are grouped by powers of the masses M and N:
///
///   sum_{(p,q)} M^p N^q [ c_0^{pq}(n; x) y + sum_{i>=1} c_i^{pq}(x) y^(i) ]
///     + eigen(n) y.
///
/// Only the order-zero coefficients may depend on the degree n.  Applied to
/// a degree-n polynomial the sum stops at order n, so the infinite operator
/// is evaluated exactly.
class OperatorPencil {
public:
  using CoefficientFn = std::function<Poly(std::int64_t order)>;
  using OrderZeroFn = std::function<Poly(std::int64_t n)>;
  using EigenFn = std::function<Rational(std::int64_t n)>;

  struct Block {
    CoefficientFn coefficient;              ///< order i >= 1; may be empty
    OrderZeroFn order_zero;                 ///< may be empty
    std::optional<std::int64_t> max_order;  ///< known highest order, if finite
  };

  OperatorPencil() = default;

  OperatorPencil& set_block(BlockKey key, Block block) {
    blocks_[key] = std::move(block);
    return *this;
  }
  OperatorPencil& set_eigen(EigenFn eigen) {
    eigen_ = std::move(eigen);
    return *this;
  }

  [[nodiscard]] const std::map<BlockKey, Block>& blocks() const { return blocks_; }
  [[nodiscard]] const EigenFn& eigen() const { return eigen_; }

  /// Coefficient of y^(i) in the given block at degree n (order 0 includes
  /// the eigen term for the (0,0) block).
  [[nodiscard]] Poly coefficient(BlockKey key, std::int64_t order, std::int64_t n) const {
    Poly r;
    if (auto it = blocks_.find(key); it != blocks_.end()) {
      const Block& b = it->second;
      if (order == 0) {
        if (b.order_zero) r = b.order_zero(n);
      } else if (b.coefficient && (!b.max_order || order <= *b.max_order)) {
        r = b.coefficient(order);
      }
    }
    if (order == 0 && key == BlockKey{} && eigen_) r += Poly::constant(eigen_(n));
    return r;
  }

  /// Sum of two pencils; blocks sharing a key are added coefficientwise.
  friend OperatorPencil operator+(const OperatorPencil& a, const OperatorPencil& b) {
    OperatorPencil r = a;
    for (const auto& [key, blk] : b.blocks_) {
      auto it = r.blocks_.find(key);
      if (it == r.blocks_.end()) {
        r.blocks_[key] = blk;
        continue;
      }
      Block lhs = it->second;
      Block merged;
      merged.coefficient = [lhs, blk](std::int64_t i) {
        Poly p;
        if (lhs.coefficient && (!lhs.max_order || i <= *lhs.max_order)) p += lhs.coefficient(i);
        if (blk.coefficient && (!blk.max_order || i <= *blk.max_order)) p += blk.coefficient(i);
        return p;
      };
      merged.order_zero = [lhs, blk](std::int64_t n) {
        Poly p;
        if (lhs.order_zero) p += lhs.order_zero(n);
        if (blk.order_zero) p += blk.order_zero(n);
        return p;
      };
      if (lhs.max_order && blk.max_order) merged.max_order = std::max(*lhs.max_order, *blk.max_order);
      it->second = std::move(merged);
    }
    if (b.eigen_) {
      if (r.eigen_) {
        auto e1 = r.eigen_, e2 = b.eigen_;
        r.eigen_ = [e1, e2](std::int64_t n) { return e1(n) + e2(n); };
      } else {
        r.eigen_ = b.eigen_;
      }
    }
    return r;
  }

private:
  std::map<BlockKey, Block> blocks_;
  EigenFn eigen_;
};

/// M^p N^q times the pencil: every block key is shifted by `by`, and the
/// eigen term becomes part of the shifted (0,0) block's order-zero term.
inline OperatorPencil shift_blocks(const OperatorPencil& pencil, BlockKey by) {
  OperatorPencil r;
  for (const auto& [key, blk] : pencil.blocks()) r.set_block(key + by, blk);
  if (pencil.eigen()) {
    OperatorPencil e;
    e.set_block(by, {{}, [eig = pencil.eigen()](std::int64_t n) { return Poly::constant(eig(n)); }, std::nullopt});
    r = r + e;
  }
  return r;
}

/// Applies the pencil to y (the degree-n member), summing block products
/// with block keys adding.  Orders above deg(y) contribute nothing and are
/// skipped.
inline MNPoly apply(const OperatorPencil& pencil, const MNPoly& y, std::int64_t n) {
  const int deg = y.max_degree();
  if (deg < 0) return {};
  std::vector<MNPoly> d{y};
  for (int i = 1; i <= deg; ++i) d.push_back(derivative(d.back()));
  MNPoly r;
  for (const auto& [key, blk] : pencil.blocks()) {
    if (blk.order_zero) r += mul_block(y * blk.order_zero(n), key.m, key.n);
    if (!blk.coefficient) continue;
    std::int64_t top = deg;
    if (blk.max_order) top = std::min<std::int64_t>(top, *blk.max_order);
    for (std::int64_t i = 1; i <= top; ++i) {
      const Poly c = blk.coefficient(i);
      if (!c.is_zero()) r += mul_block(d[static_cast<std::size_t>(i)] * c, key.m, key.n);
    }
  }
  if (pencil.eigen()) r += y * pencil.eigen()(n);
  return r;
}

namespace detail {
/// Memoizes an order-indexed generator; the cache is shared by copies and
/// guarded so a pencil can be applied from several threads.
inline OperatorPencil::CoefficientFn cached(OperatorPencil::CoefficientFn f) {
  struct Cache {
    std::mutex mu;
    std::map<std::int64_t, Poly> values;
  };
  auto cache = std::make_shared<Cache>();
  return [f = std::move(f), cache](std::int64_t i) {
    {
      std::lock_guard lock(cache->mu);
      if (auto it = cache->values.find(i); it != cache->values.end()) return it->second;
    }
    Poly p = f(i);
    std::lock_guard lock(cache->mu);
    cache->values.emplace(i, p);
    return p;
  };
}

inline OperatorPencil::Block table_block(const std::vector<Poly>& by_order, OperatorPencil::OrderZeroFn zero = {}) {
  OperatorPencil::Block b;
  b.max_order = static_cast<std::int64_t>(by_order.size()) - 1;
  b.coefficient = [by_order](std::int64_t i) {
    return i < static_cast<std::int64_t>(by_order.size()) ? by_order[static_cast<std::size_t>(i)] : Poly{};
  };
  b.order_zero = std::move(zero);
  return b;
}
}  // namespace detail

/// x y'' + (alpha+1-x) y' + n y.
inline OperatorPencil pencil_laguerre_classical(const Rational& alpha) {
  OperatorPencil p;
  p.set_block({}, detail::table_block({Poly{}, Poly({alpha + Rational(1), Rational(-1)}), Poly::x()}));
  p.set_eigen([](std::int64_t n) { return Rational(n); });
  return p;
}

/// (1-x^2) y'' + [beta-alpha-(alpha+beta+2) x] y' + n(n+alpha+beta+1) y.
inline OperatorPencil pencil_jacobi_classical(const Rational& alpha, const Rational& beta) {
  OperatorPencil p;
  p.set_block({}, detail::table_block({Poly{}, Poly({beta - alpha, -(alpha + beta + Rational(2))}),
                                       Poly({Rational(1), Rational(0), Rational(-1)})}));
  p.set_eigen([s = alpha + beta + Rational(1)](std::int64_t n) { return Rational(n) * (Rational(n) + s); });
  return p;
}

/// M sum a_i y^(i) + x y'' + (alpha+1-x) y' + n y, annihilating L_n^{alpha,M}.
inline OperatorPencil pencil_laguerre_m(const Rational& alpha) {
  OperatorPencil::Block b;
  b.coefficient = detail::cached([alpha](std::int64_t i) { return coeff_laguerre_a(alpha, i, 0); });
  b.order_zero = [alpha](std::int64_t n) { return coeff_laguerre_a(alpha, 0, n); };
  OperatorPencil p = pencil_laguerre_classical(alpha);
  p.set_block({1, 0}, std::move(b));
  return p;
}

/// sum b_i^* y^(i) + M sum c_i^* y^(i), annihilating L_n^{alpha,M,N} for n >= 1.
inline OperatorPencil pencil_laguerre_trivial(const Rational& alpha) {
  OperatorPencil::Block b;
  b.coefficient = detail::cached([alpha](std::int64_t i) { return coeff_laguerre_bstar(alpha, i); });
  b.order_zero = [](std::int64_t) { return Poly::constant(Rational(1)); };
  OperatorPencil::Block c;
  c.coefficient = [alpha](std::int64_t i) { return coeff_laguerre_cstar(alpha, i); };
  c.order_zero = [](std::int64_t) { return Poly::constant(Rational(1)); };
  OperatorPencil p;
  p.set_block({0, 0}, std::move(b));
  p.set_block({1, 0}, std::move(c));
  return p;
}

/// The literal alpha = 0 order-10 equation, including the classical part.
inline OperatorPencil pencil_alpha0_order10() {
  OperatorPencil p;
  for (const auto& [key, coeffs] : alpha0_order10_table().coefficients) {
    p.set_block(key, detail::table_block(coeffs, [key](std::int64_t n) {
                  return Poly::constant(Alpha0Order10Table::order_zero(key, n));
                }));
  }
  return p;
}

/// sum b_i y^(i), annihilating P_n^{alpha,alpha,M,M} (independent of alpha).
inline OperatorPencil pencil_jacobi_trivial() {
  OperatorPencil::Block b;
  b.coefficient = [](std::int64_t i) { return coeff_jacobi_b(0, i); };
  b.order_zero = [](std::int64_t n) { return coeff_jacobi_b(n, 0); };
  OperatorPencil p;
  p.set_block({}, std::move(b));
  return p;
}

/// M sum c_i y^(i) + (1-x^2) y'' - 2(alpha+1) x y' + n(n+2alpha+1) y.
inline OperatorPencil pencil_jacobi_symmetric(const Rational& alpha) {
  OperatorPencil::Block c;
  c.coefficient = detail::cached([alpha](std::int64_t i) { return coeff_jacobi_c(alpha, i, 0); });
  c.order_zero = [alpha](std::int64_t n) { return coeff_jacobi_c(alpha, 0, n); };
  OperatorPencil p = pencil_jacobi_classical(alpha, alpha);
  p.set_block({1, 0}, std::move(c));
  return p;
}

/// Residual of one degree.
struct ResidualItem {
  std::int64_t n;
  MNPoly residual;
  [[nodiscard]] bool passed() const { return residual.is_zero(); }
};

/// Outcome of applying a pencil to a run of family members.  Failures are
/// data: the full nonzero residual is kept.
struct VerificationReport {
  std::string name;
  std::vector<ResidualItem> items;
  [[nodiscard]] bool passed() const {
    for (const auto& it : items)
      if (!it.passed()) return false;
    return true;
  }
};

inline VerificationReport verify_family(const OperatorPencil& pencil, const FamilyParams& family, std::int64_t n_first,
                                        std::int64_t n_last, std::string name = {}) {
  VerificationReport rep{std::move(name), {}};
  for (std::int64_t n = n_first; n <= n_last; ++n) {
    const GeneralizedPoly y = family_member(family, n);
    rep.items.push_back({n, apply(pencil, y.value, n)});
  }
  return rep;
}

}  // namespace infdiff

#endif  // INFDIFF_PENCIL_HPP
