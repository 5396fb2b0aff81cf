#pragma once

#include <string>

#include "sgnash/rational.hpp"

namespace sgnash {

/// Floor of sqrt(n) for n >= 0.
mpz_class isqrt(const mpz_class& n);
bool is_perfect_square(const mpz_class& n);

/// Closed rational interval [lo, hi], lo <= hi.
struct RationalInterval {
  Rat lo;
  Rat hi;

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / Rat(2); }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  /// +1 / -1 when the whole interval is on one side of zero, 0 otherwise.
  int sign() const {
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    return 0;
  }
  RationalInterval operator+(const RationalInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RationalInterval scaled(const Rat& c) const {
    return c.sign() >= 0 ? RationalInterval{c * lo, c * hi} : RationalInterval{c * hi, c * lo};
  }
};

/// Deterministic enclosure of sqrt(a): lo^2 <= a <= hi^2 and hi - lo <= eps.
/// Bisection from the integer floor-sqrt bracket, so output bytes are
/// reproducible across platforms.
RationalInterval sqrt_enclosure(long a, const Rat& eps);

/// Element p + q*sqrt(a) of the real quadratic extension Q(sqrt(a)).
///
/// Canonical form: a perfect-square radicand is folded into the rational part
/// at construction (so division stays total), and q == 0 forces a == 0, the
/// wildcard "purely rational" radicand that combines with any other. Two
/// elements with distinct nonzero radicands cannot be combined.
class QuadExt {
 public:
  QuadExt() : a_(0) {}
  QuadExt(const Rat& r) : a_(0), p_(r) {}  // NOLINT: rationals embed implicitly
  QuadExt(long n) : a_(0), p_(n) {}        // NOLINT
  QuadExt(long a, Rat p, Rat q);

  static QuadExt sqrt_of(long a) { return QuadExt(a, Rat(0), Rat(1)); }

  long radicand() const { return a_; }
  const Rat& rational_part() const { return p_; }
  const Rat& radical_part() const { return q_; }

  bool is_rational() const { return q_.is_zero(); }
  Rat rational_value() const {
    if (!is_rational()) throw std::domain_error("QuadExt: value is irrational");
    return p_;
  }

  QuadExt operator-() const { return QuadExt(a_, -p_, -q_); }
  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator/(const QuadExt& o) const;
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  /// Exact sign by case analysis on p, q and comparison of p^2 against q^2 a.
  /// Never touches floating point.
  int sign() const;
  bool is_zero() const { return p_.is_zero() && q_.is_zero(); }

  bool operator==(const QuadExt& o) const { return (*this - o).is_zero(); }
  bool operator<(const QuadExt& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadExt& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadExt& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QuadExt& o) const { return (*this - o).sign() >= 0; }

  QuadExt abs() const { return sign() < 0 ? -*this : *this; }

  /// Enclosure of the value with radical resolved to within eps.
  RationalInterval enclosure(const Rat& eps) const;

  mpz_class floor() const;
  std::string str() const;  // human-readable, e.g. "1/6 - 1/12*sqrt(2)"
  std::string decimal(int places = 12) const;
  double to_double() const;

 private:
  long a_;  // radicand; 0 encodes a purely rational value
  Rat p_, q_;

  static long merge_radicand(long x, long y);
};

inline int sign(const QuadExt& x) { return x.sign(); }
inline QuadExt abs(const QuadExt& x) { return x.abs(); }

/// Decomposes a >= 1 as b^2 * d with d square-free; returns {b, d}.
std::pair<long, long> square_free_decompose(long a);

}  // namespace sgnash
