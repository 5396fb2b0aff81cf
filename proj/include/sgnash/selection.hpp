#pragma once

#include <vector>

#include "sgnash/rational.hpp"

namespace sgnash {

/// Piecewise-linear selection primitives. select_pair_step is the direct
/// pseudo-circuit for the two-input selection correspondence: its fixed
/// points in z are y1 when x1 > x2, y2 when x1 < x2, and the whole interval
/// [min(y1,y2), max(y1,y2)] on a tie. select_n chains the same semantics over
/// n inputs via prefix maxima, emitting one point of the correspondence
/// F(x, y) = [min_{A} y_j, max_{A} y_j] with A = argmax_j x_j.

/// One application of the pair circuit to the auxiliary input z.
Rat select_pair_step(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2, const Rat& z);

/// Same circuit without the [0, 1] domain check; solver internals feed it
/// unnormalized action valuations.
Rat select_pair_step_raw(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2, const Rat& z);

/// The exact fixed-point set of select_pair_step in z (lo == hi when unique).
struct FixedPointSet {
  Rat lo;
  Rat hi;
  bool singleton() const { return lo == hi; }
};
FixedPointSet select_pair_fixed_points(const Rat& x1, const Rat& x2, const Rat& y1, const Rat& y2);

enum class TieRule { KEEP_EARLIER };

/// Deterministic point selection: walks i = 2..n keeping the previous pick
/// while x_i stays below the running prefix max, switching to y_i when it is
/// strictly above, and applying the tie rule on equality.
Rat select_n(const std::vector<Rat>& x, const std::vector<Rat>& y,
             TieRule rule = TieRule::KEEP_EARLIER);

/// The contract interval [min_A y, max_A y] over the argmax set of x.
FixedPointSet select_interval(const std::vector<Rat>& x, const std::vector<Rat>& y);

}  // namespace sgnash
