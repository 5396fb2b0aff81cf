#include "sgnash/quadext.hpp"

#include <stdexcept>

namespace sgnash {

mpz_class isqrt(const mpz_class& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const mpz_class& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

RationalInterval sqrt_enclosure(long a, const Rat& eps) {
  if (a < 1) throw std::domain_error("sqrt_enclosure: a must be >= 1");
  if (eps.sign() <= 0) throw std::domain_error("sqrt_enclosure: eps must be > 0");
  mpz_class root = isqrt(mpz_class(a));
  if (root * root == a) return {Rat(root), Rat(root)};
  Rat lo{root}, hi{mpz_class(root + 1)};
  Rat ra(a);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / Rat(2);
    if (mid * mid <= ra) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

QuadExt::QuadExt(long a, Rat p, Rat q) : a_(a), p_(std::move(p)), q_(std::move(q)) {
  if (a_ < 0) throw std::domain_error("QuadExt: negative radicand");
  if (q_.is_zero()) {
    a_ = 0;
    return;
  }
  if (a_ == 0) throw std::domain_error("QuadExt: radical part with rational radicand");
  mpz_class root = isqrt(mpz_class(a_));
  if (root * root == a_) {
    // sqrt(a) is an integer: fold into the rational part.
    p_ += q_ * Rat(root);
    q_ = Rat(0);
    a_ = 0;
  }
}

long QuadExt::merge_radicand(long x, long y) {
  if (x == 0) return y;
  if (y == 0) return x;
  if (x != y) throw std::domain_error("QuadExt: radicand mismatch");
  return x;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  return QuadExt(merge_radicand(a_, o.a_), p_ + o.p_, q_ + o.q_);
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
  return QuadExt(merge_radicand(a_, o.a_), p_ - o.p_, q_ - o.q_);
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
  long a = merge_radicand(a_, o.a_);
  // (p1 + q1 s)(p2 + q2 s) = (p1 p2 + q1 q2 a) + (p1 q2 + p2 q1) s
  return QuadExt(a, p_ * o.p_ + q_ * o.q_ * Rat(a), p_ * o.q_ + o.p_ * q_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
  if (o.is_zero()) throw std::domain_error("QuadExt: division by zero");
  long a = merge_radicand(a_, o.a_);
  // Multiply by the conjugate; the norm p^2 - q^2 a of a nonzero element is
  // nonzero because the radicand is never a perfect square in canonical form.
  Rat norm = o.p_ * o.p_ - o.q_ * o.q_ * Rat(a);
  QuadExt numer = *this * QuadExt(a, o.p_, -o.q_);
  return QuadExt(a, numer.p_ / norm, numer.q_ / norm);
}

int QuadExt::sign() const {
  int sp = p_.sign();
  int sq = q_.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 against q^2 a; equality cannot happen since
  // sqrt(a) is irrational here.
  Rat p2 = p_ * p_;
  Rat q2a = q_ * q_ * Rat(a_);
  if (sp > 0) return p2 > q2a ? 1 : -1;
  return q2a > p2 ? 1 : -1;
}

RationalInterval QuadExt::enclosure(const Rat& eps) const {
  if (is_rational()) return {p_, p_};
  RationalInterval root = sqrt_enclosure(a_, eps);
  RationalInterval scaled = root.scaled(q_);
  return {p_ + scaled.lo, p_ + scaled.hi};
}

mpz_class QuadExt::floor() const {
  if (is_rational()) return p_.floor();
  Rat eps(1, 4);
  for (;;) {
    RationalInterval box = enclosure(eps);
    mpz_class flo = box.lo.floor();
    mpz_class fhi = box.hi.floor();
    if (flo == fhi) return flo;
    // The value is irrational, so it is never an integer and the bracket
    // eventually falls inside a single integer cell.
    eps /= Rat(16);
  }
}

std::string QuadExt::str() const {
  if (is_rational()) return p_.str();
  std::string qs = q_.abs().str();
  return p_.str() + (q_.sign() < 0 ? " - " : " + ") + qs + "*sqrt(" + std::to_string(a_) + ")";
}

std::string QuadExt::decimal(int places) const {
  QuadExt a = abs();
  QuadExt scaled = a * QuadExt(Rat::pow10(places)) + QuadExt(Rat(1, 2));
  return format_scaled_decimal(scaled.floor(), places, sign() < 0);
}

double QuadExt::to_double() const {
  RationalInterval box = enclosure(Rat(1, 1000000000L));
  return box.midpoint().to_double();
}

std::pair<long, long> square_free_decompose(long a) {
  if (a < 1) throw std::domain_error("square_free_decompose: a must be >= 1");
  if (a > 1000000000000L)
    throw std::domain_error("square_free_decompose: a exceeds the 10^12 trial-division bound");
  long b = 1, d = 1, rest = a;
  for (long f = 2; f * f <= rest; ++f) {
    int count = 0;
    while (rest % f == 0) {
      rest /= f;
      ++count;
    }
    for (int i = 0; i + 1 < count; i += 2) b *= f;
    if (count % 2 == 1) d *= f;
  }
  d *= rest;
  return {b, d};
}

}  // namespace sgnash
