#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sgnash {

/// Exact rational scalar backed by GMP. Canonical at all times:
/// denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long n) : q_(n) {}  // NOLINT: implicit by design, rationals embed integers
  Rat(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }
  explicit Rat(mpz_class n) : q_(std::move(n)) {}
  Rat(mpz_class n, mpz_class d) : q_(std::move(n), std::move(d)) {
    if (q_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses the canonical "num/den" form; a bare integer "num" is accepted.
  static std::optional<Rat> try_parse(const std::string& s);
  static Rat parse(const std::string& s) {
    auto r = try_parse(s);
    if (!r) throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    return *r;
  }

  const mpz_class num() const { return q_.get_num(); }
  const mpz_class den() const { return q_.get_den(); }

  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(q_ / o.q_));
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  bool operator==(const Rat& o) const { return mpq_equal(q_.get_mpq_t(), o.q_.get_mpq_t()) != 0; }
  std::strong_ordering operator<=>(const Rat& o) const {
    int c = mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rat abs() const { return sign() < 0 ? -*this : *this; }
  Rat inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(q_.get_den(), q_.get_num());
  }

  /// Largest integer <= value.
  mpz_class floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return f;
  }
  mpz_class ceil() const {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return c;
  }

  /// Canonical serialization, always with explicit denominator: "-3/4", "2/1".
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  /// Fixed-point decimal rendering, `places` digits, round half away from zero.
  std::string decimal(int places = 12) const;

  double to_double() const { return q_.get_d(); }

  static Rat pow10(int k);  // 10^k, k may be negative
  static Rat pow2(int k);   // 2^k, k may be negative

 private:
  mpq_class q_;
};

inline int sign(const Rat& r) { return r.sign(); }
inline Rat abs(const Rat& r) { return r.abs(); }
inline Rat operator*(long n, const Rat& r) { return Rat(n) * r; }

/// The unique rational with smallest denominator (ties: closest to zero) in
/// the closed interval [lo, hi]. Stern-Brocot / continued-fraction descent.
Rat simplest_in_interval(const Rat& lo, const Rat& hi);

/// Rounds to the nearest multiple of 2^-bits (ties toward -inf). Used to cap
/// coefficient growth in long fixed-point iterations.
Rat quantize(const Rat& x, int bits);

/// Formats an integer times 10^-places as a fixed decimal string.
std::string format_scaled_decimal(const mpz_class& scaled, int places, bool negative);

}  // namespace sgnash
