#include "sgnash/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace sgnash {

namespace {

const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

void check_unit(const Rat& v, const char* what) {
  if (v.sign() < 0 || v > Rat(1)) throw std::invalid_argument(std::string(what) + " outside [0, 1]");
}

}  // namespace

Rat select_pair_step(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2, const Rat& z) {
  check_unit(x1, "x1");
  check_unit(x2, "x2");
  check_unit(y1, "y1");
  check_unit(y2, "y2");
  check_unit(z, "z");
  return select_pair_step_raw(x1, x2, y1, y2, z);
}

Rat select_pair_step_raw(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2, const Rat& z) {
  Rat dx = x1 - x2;
  Rat dy = y1 - y2;
  Rat d1 = rat_max(Rat(0), rat_min(dx, dy));
  Rat d2 = rat_max(Rat(0), rat_min(dx, -dy));
  Rat d3 = rat_max(Rat(0), rat_min(-dx, -dy));
  Rat d4 = rat_max(Rat(0), rat_min(-dx, dy));
  Rat moved = z + d1 - d2 + d3 - d4;
  return rat_max(rat_min(y1, y2), rat_min(rat_max(y1, y2), moved));
}

FixedPointSet select_pair_fixed_points(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2) {
  if (x1 > x2) return {y1, y1};
  if (x1 < x2) return {y2, y2};
  return {rat_min(y1, y2), rat_max(y1, y2)};
}

Rat select_n(const std::vector<Rat>& x, const std::vector<Rat>& y, TieRule rule) {
  if (x.empty() || x.size() != y.size()) throw std::invalid_argument("select_n: bad input lengths");
  (void)rule;  // KEEP_EARLIER is the only rule
  Rat pick = y[0];
  Rat prefix_max = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > prefix_max) {
      pick = y[i];
      prefix_max = x[i];
    }
    // On x[i] == prefix_max the earlier pick is kept; below it nothing moves.
  }
  return pick;
}

FixedPointSet select_interval(const std::vector<Rat>& x, const std::vector<Rat>& y) {
  if (x.empty() || x.size() != y.size())
    throw std::invalid_argument("select_interval: bad input lengths");
  Rat best = *std::max_element(x.begin(), x.end());
  FixedPointSet out{y[0], y[0]};
  bool first = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == best)) continue;
    if (first) {
      out.lo = out.hi = y[i];
      first = false;
    } else {
      out.lo = rat_min(out.lo, y[i]);
      out.hi = rat_max(out.hi, y[i]);
    }
  }
  return out;
}

}  // namespace sgnash
