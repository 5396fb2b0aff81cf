#pragma once

#include "sgnash/best_response.hpp"

namespace sgnash {

struct SolverConfig {
  Rat damping{1, 4};              // alpha in (0, 1]
  long max_iters = 1000000;
  Rat residual_target = Rat(1, 1000000000L);   // 1e-9
  Rat argmax_tolerance = Rat(1, 1000000000L);  // delta for argmax widening
  mpz_class rationalize_denom_bound = mpz_class(1000000000000L);  // 1e12

  void check() const {
    if (damping.sign() <= 0 || damping > Rat(1))
      throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
    if (residual_target.sign() <= 0)
      throw std::invalid_argument("SolverConfig: residual target must be > 0");
    if (argmax_tolerance.sign() < 0)
      throw std::invalid_argument("SolverConfig: argmax tolerance must be >= 0");
  }
};

/// One deterministic point selection from the valuation correspondence:
/// controller rows take exact maxima of their action valuations, the other
/// player's rows go through select_n (KEEP_EARLIER) keyed on the controller's
/// action valuations.
Valuation<Rat> correspondence_G(const StochasticGame& game, const Valuation<Rat>& valuation);

struct IterateResult {
  Valuation<Rat> valuation;
  Rat residual;       // sup-norm residual of the undamped map at the iterate
  long iterations = 0;
  bool converged = false;
};

/// Damped fixed-point iteration of the valuation pseudo-circuit from v = 0
/// (or a warm start). Opponent rows are driven by the pair selection circuit
/// threading the row itself as the auxiliary fixed-point variable, which
/// moves continuously through argmax ties instead of jumping. Entries are
/// rounded to a 2^-64 grid after every step so coefficient bit-length stays
/// bounded over long runs; the grid is far below any residual of interest.
IterateResult iterate(const StochasticGame& game, const SolverConfig& cfg,
                      const Valuation<Rat>* warm_start = nullptr);

struct SolveResult {
  Profile<Rat> profile;
  Valuation<Rat> valuation;  // induced by the profile, exact
  Rat certified_eps;         // exact max best-response gap of the profile
  bool exact = false;        // certified_eps == 0
  bool recovered = false;    // closed-form recovery produced the profile
};

/// Rationalizes the candidate valuation (simplest rational within a residual
/// tolerance, denominators capped), recovers a profile by the closed-form
/// two-point rule with argmax widening, and certifies it exactly. Falls back
/// to the clamped extreme-pair mixture against the unrationalized valuation
/// when recovery is infeasible; a certificate is always produced.
SolveResult snap_and_certify(const StochasticGame& game, const Valuation<Rat>& valuation,
                             const SolverConfig& cfg);

struct Solve2pOutcome {
  IterateResult iteration;
  SolveResult result;
};

Solve2pOutcome solve2p(const StochasticGame& game, const SolverConfig& cfg = SolverConfig{});

/// Best rational approximation with denominator at most `bound`, by
/// continued-fraction convergents and the final semiconvergent.
Rat best_approx_bounded_denominator(const Rat& value, const mpz_class& bound);

}  // namespace sgnash
