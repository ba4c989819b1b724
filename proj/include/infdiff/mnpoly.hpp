#ifndef INFDIFF_MNPOLY_HPP
#define INFDIFF_MNPOLY_HPP

#include <compare>
#include <map>
#include <string>
#include <utility>

#include "infdiff/poly.hpp"

namespace infdiff {

/// Monomial M^m N^n in the two mass parameters.
struct BlockKey {
  unsigned m = 0;
  unsigned n = 0;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
  friend BlockKey operator+(BlockKey a, BlockKey b) { return {a.m + b.m, a.n + b.n}; }
};

/// "1", "M", "N", "M*N", "M^2", ...
inline std::string to_string(BlockKey k) {
  std::string out;
  auto part = [&](const char* sym, unsigned e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += sym;
    if (e > 1) out += "^" + std::to_string(e);
  };
  part("M", k.m);
  part("N", k.n);
  return out.empty() ? "1" : out;
}

/// Polynomial in x whose coefficients are polynomials in M and N, stored as
/// sum over (m, n) of M^m N^n * poly_{m,n}(x).  Zero blocks are never stored.
class MNPoly {
public:
  using Map = std::map<BlockKey, Poly>;

  MNPoly() = default;
  explicit MNPoly(const Poly& p, BlockKey key = {}) { add(key, p); }

  /// Scalar c * M^m N^n.
  static MNPoly scalar(const Rational& c, BlockKey key = {}) { return MNPoly(Poly::constant(c), key); }

  [[nodiscard]] bool is_zero() const { return blocks_.empty(); }
  [[nodiscard]] const Map& blocks() const { return blocks_; }
  [[nodiscard]] Poly block(BlockKey key) const {
    auto it = blocks_.find(key);
    return it == blocks_.end() ? Poly{} : it->second;
  }
  /// Largest x-degree over all blocks (-1 when zero).
  [[nodiscard]] int max_degree() const {
    int d = -1;
    for (const auto& [k, p] : blocks_) d = std::max(d, p.degree());
    return d;
  }

  void add(BlockKey key, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = blocks_.try_emplace(key, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) blocks_.erase(it);
    }
  }

  MNPoly& operator+=(const MNPoly& o) {
    for (const auto& [k, p] : o.blocks_) add(k, p);
    return *this;
  }
  MNPoly& operator-=(const MNPoly& o) {
    for (const auto& [k, p] : o.blocks_) add(k, -p);
    return *this;
  }
  friend MNPoly operator+(MNPoly a, const MNPoly& b) { return a += b; }
  friend MNPoly operator-(MNPoly a, const MNPoly& b) { return a -= b; }

  friend MNPoly operator*(const MNPoly& a, const Poly& p) {
    MNPoly r;
    for (const auto& [k, q] : a.blocks_) r.add(k, q * p);
    return r;
  }
  friend MNPoly operator*(const MNPoly& a, const Rational& s) { return a * Poly::constant(s); }
  friend MNPoly operator*(const MNPoly& a, const MNPoly& b) {
    MNPoly r;
    for (const auto& [ka, pa] : a.blocks_)
      for (const auto& [kb, pb] : b.blocks_) r.add(ka + kb, pa * pb);
    return r;
  }

  friend bool operator==(const MNPoly&, const MNPoly&) = default;

private:
  Map blocks_;
};

/// Multiplies by M^mp N^nq.
inline MNPoly mul_block(const MNPoly& p, unsigned mp, unsigned nq) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks()) r.add({k.m + mp, k.n + nq}, q);
  return r;
}

/// Substitutes numeric masses M = m, N = n.
inline Poly eval_params(const MNPoly& p, const Rational& m, const Rational& n) {
  Poly r;
  for (const auto& [k, q] : p.blocks()) r += q * (pow(m, k.m) * pow(n, k.n));
  return r;
}

inline MNPoly derivative(const MNPoly& p, std::size_t order = 1) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks()) r.add(k, derivative(q, order));
  return r;
}

inline MNPoly reflect(const MNPoly& p) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks()) r.add(k, reflect(q));
  return r;
}

/// Exchanges the roles of M and N.
inline MNPoly swap_masses(const MNPoly& p) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks()) r.add({k.n, k.m}, q);
  return r;
}

/// Keeps only the blocks free of N, i.e. the specialization N = 0.
inline MNPoly drop_n(const MNPoly& p) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks())
    if (k.n == 0) r.add(k, q);
  return r;
}

/// Identifies N with M (folds M^a N^b into M^(a+b)).
inline MNPoly identify_masses(const MNPoly& p) {
  MNPoly r;
  for (const auto& [k, q] : p.blocks()) r.add({k.m + k.n, 0}, q);
  return r;
}

/// Canonical rendering with sorted block keys, e.g. "(1 - x) + M*(-x)".
inline std::string to_string(const MNPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, q] : p.blocks()) {
    if (!out.empty()) out += " + ";
    if (k.m != 0 || k.n != 0) out += to_string(k) + "*";
    out += "(" + to_string(q) + ")";
  }
  return out;
}

}  // namespace infdiff

#endif  // INFDIFF_MNPOLY_HPP
