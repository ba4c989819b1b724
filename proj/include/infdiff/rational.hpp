#ifndef INFDIFF_RATIONAL_HPP
#define INFDIFF_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infdiff {

/// Exact rational number, always held in lowest terms with a positive
/// denominator.  Thin value wrapper over GMP's mpq_class that keeps the
/// expression templates out of user code.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "p", "-p" or "p/q".  Decimal points and exponents are rejected:
  /// parameters must be given exactly.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
      const auto b = t.find_first_not_of(" \t");
      const auto e = t.find_last_not_of(" \t");
      t = b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
      if (t.empty()) return false;
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    trim(num);
    trim(den);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
      throw std::invalid_argument("Rational::parse: not an exact rational: '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
  }

  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  /// True for 0, 1, 2, ...
  [[nodiscard]] bool is_nonneg_integer() const { return is_integer() && sign() >= 0; }
  /// True for 0, -1, -2, ...
  [[nodiscard]] bool is_nonpos_integer() const { return is_integer() && sign() <= 0; }

  /// Integer value; throws if not an integer or out of range.
  [[nodiscard]] std::int64_t to_int() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
      throw std::domain_error("Rational::to_int: not a small integer: " + str());
    return q_.get_num().get_si();
  }

  [[nodiscard]] double to_double() const { return q_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const { return q_.get_str(10); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// (-1)^k
inline Rational sign_power(std::int64_t k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

inline Rational pow(const Rational& base, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace infdiff

template <>
struct std::hash<infdiff::Rational> {
  std::size_t operator()(const infdiff::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

#endif  // INFDIFF_RATIONAL_HPP
