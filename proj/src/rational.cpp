#include "sgnash/rational.hpp"

#include <cctype>

namespace sgnash {

std::optional<Rat> Rat::try_parse(const std::string& s) {
  // Accepted grammar: '-'? digits ('/' digits)?  with nonzero denominator.
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_begin) return std::nullopt;
  std::string num = s.substr(0, i);
  std::string den = "1";
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    std::size_t den_begin = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_begin || i != s.size()) return std::nullopt;
    den = s.substr(den_begin);
  }
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  return Rat(std::move(n), std::move(d));
}

std::string format_scaled_decimal(const mpz_class& scaled, int places, bool negative) {
  std::string digits = scaled.get_str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
  if (negative && scaled != 0) out.insert(0, 1, '-');
  if (negative && scaled == 0) out = out;  // -0 normalizes to 0
  return out;
}

std::string Rat::decimal(int places) const {
  Rat a = abs();
  // floor(|x| * 10^places + 1/2), i.e. round half away from zero
  Rat scaled = a * Rat::pow10(places) + Rat(1, 2);
  return format_scaled_decimal(scaled.floor(), places, sign() < 0);
}

Rat Rat::pow10(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rat(p) : Rat(1, p);
}

Rat Rat::pow2(int k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rat(p) : Rat(1, p);
}

namespace {

// Simplest rational in [lo, hi] for 0 < lo <= hi.
Rat simplest_positive(const Rat& lo, const Rat& hi) {
  mpz_class fl = lo.floor();
  if (Rat(fl) == lo) return lo;        // lo itself is the integer floor
  if (Rat(mpz_class(fl + 1)) <= hi) return Rat(mpz_class(fl + 1));
  // No integer inside: recurse on the reciprocal of the fractional parts.
  Rat lo_frac = lo - Rat(fl);
  Rat hi_frac = hi - Rat(fl);
  Rat inner = simplest_positive(hi_frac.inverse(), lo_frac.inverse());
  return Rat(fl) + inner.inverse();
}

}  // namespace

Rat simplest_in_interval(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_in_interval: lo > hi");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rat(0);
  if (hi.sign() < 0) return -simplest_positive(-hi, -lo);
  return simplest_positive(lo, hi);
}

Rat quantize(const Rat& x, int bits) {
  Rat scale = Rat::pow2(bits);
  Rat scaled = x * scale + Rat(1, 2);
  return Rat(scaled.floor()) / scale;
}

}  // namespace sgnash
