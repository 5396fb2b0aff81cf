#include "sgnash/solver2p.hpp"

#include <algorithm>

#include "sgnash/selection.hpp"

namespace sgnash {

namespace {

void require_two_players(const StochasticGame& game, const char* who) {
  if (game.num_players != 2) throw std::invalid_argument(std::string(who) + ": requires a 2-player game");
}

Rat max_of(const std::vector<Rat>& xs) {
  Rat best = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > best) best = xs[i];
  return best;
}

}  // namespace

Valuation<Rat> correspondence_G(const StochasticGame& game, const Valuation<Rat>& valuation) {
  require_two_players(game, "correspondence_G");
  ActionValuations<Rat> av = action_valuations(game, valuation);
  Valuation<Rat> out = Valuation<Rat>::zero(2, game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const int c = game.states[k].controller - 1;
    const int o = 1 - c;
    std::vector<Rat> xs, ys;
    for (const auto& per_player : av.v[k]) {
      xs.push_back(per_player[c]);
      ys.push_back(per_player[o]);
    }
    out.v[c][k] = max_of(xs);
    out.v[o][k] = select_n(xs, ys, TieRule::KEEP_EARLIER);
  }
  return out;
}

namespace {

/// Iteration state: the valuation plus, for states with three or more
/// actions, the interior auxiliary variables of the selection chain. The
/// chain's final variable is identified with the opponent's valuation row.
struct IterState {
  Valuation<Rat> v;
  std::vector<std::vector<Rat>> chain;  // [state][i], i = 0..n_actions-3
};

struct IterTargets {
  Valuation<Rat> v;
  std::vector<std::vector<Rat>> chain;
  Rat residual;
};

IterState initial_state(const StochasticGame& game, const Valuation<Rat>* warm_start) {
  IterState st;
  st.v = warm_start ? *warm_start : Valuation<Rat>::zero(2, game.state_count());
  st.chain.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    std::size_t n = game.states[k].actions.size();
    st.chain[k].assign(n > 2 ? n - 2 : 0, Rat(0));
  }
  return st;
}

IterTargets evaluate_map(const StochasticGame& game, const IterState& st) {
  ActionValuations<Rat> av = action_valuations(game, st.v);
  IterTargets t;
  t.v = Valuation<Rat>::zero(2, game.state_count());
  t.chain.resize(game.state_count());
  t.residual = Rat(0);
  auto track = [&](const Rat& target, const Rat& current) {
    Rat delta = (target - current).abs();
    if (delta > t.residual) t.residual = delta;
  };

  for (int k = 0; k < game.state_count(); ++k) {
    const int c = game.states[k].controller - 1;
    const int o = 1 - c;
    const std::size_t n = game.states[k].actions.size();
    std::vector<Rat> xs(n), ys(n);
    for (std::size_t a = 0; a < n; ++a) {
      xs[a] = av.v[k][a][c];
      ys[a] = av.v[k][a][o];
    }

    Rat own = max_of(xs);
    track(own, st.v.v[c][k]);
    t.v.v[c][k] = std::move(own);

    t.chain[k].assign(st.chain[k].size(), Rat(0));
    if (n == 1) {
      track(ys[0], st.v.v[o][k]);
      t.v.v[o][k] = ys[0];
      continue;
    }
    // Selection chain over prefix maxima; every pair step threads its stored
    // auxiliary value, so the whole map is continuous in the state.
    Rat prefix_max = xs[0];
    Rat z_prev = ys[0];
    for (std::size_t i = 1; i < n; ++i) {
      const bool last = (i == n - 1);
      const Rat& slot = last ? st.v.v[o][k] : st.chain[k][i - 1];
      Rat stepped = select_pair_step_raw(prefix_max, xs[i], z_prev, ys[i], slot);
      track(stepped, slot);
      if (last) {
        t.v.v[o][k] = stepped;
      } else {
        t.chain[k][i - 1] = stepped;
      }
      z_prev = slot;  // current value of this chain variable feeds the next step
      if (xs[i] > prefix_max) prefix_max = xs[i];
    }
  }
  return t;
}

void damped_step(IterState& st, const IterTargets& targets, const Rat& alpha) {
  // Denominator growth is capped by snapping oversized entries to a 2^-64
  // grid; entries that stay small (in particular exact fixed-point values)
  // are never perturbed.
  constexpr int kGridBits = 64;
  static const mpz_class grid_scale = []() {
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), 2, kGridBits);
    return s;
  }();
  auto blend = [&](Rat& current, const Rat& target) {
    current += alpha * (target - current);
    if (current.den() > grid_scale) current = quantize(current, kGridBits);
  };
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < st.v.v[i].size(); ++k) blend(st.v.v[i][k], targets.v.v[i][k]);
  for (std::size_t k = 0; k < st.chain.size(); ++k)
    for (std::size_t j = 0; j < st.chain[k].size(); ++j) blend(st.chain[k][j], targets.chain[k][j]);
}

}  // namespace

IterateResult iterate(const StochasticGame& game, const SolverConfig& cfg,
                      const Valuation<Rat>* warm_start) {
  require_two_players(game, "iterate");
  cfg.check();
  IterState st = initial_state(game, warm_start);
  for (long it = 1;; ++it) {
    IterTargets targets = evaluate_map(game, st);
    if (targets.residual <= cfg.residual_target) return {st.v, targets.residual, it, true};
    if (it >= cfg.max_iters) return {st.v, targets.residual, it, false};
    damped_step(st, targets, cfg.damping);
  }
}

Rat best_approx_bounded_denominator(const Rat& value, const mpz_class& bound) {
  if (bound < 1) throw std::invalid_argument("best_approx_bounded_denominator: bound must be >= 1");
  if (value.den() <= bound) return value;
  // Continued-fraction convergents, then the best final semiconvergent.
  mpz_class pk_prev = 1, qk_prev = 0;  // p_{-1}/q_{-1}
  mpz_class a0 = value.floor();
  mpz_class pk = a0, qk = 1;
  Rat x = value - Rat(a0);
  while (!x.is_zero()) {
    x = x.inverse();
    mpz_class a = x.floor();
    x -= Rat(a);
    mpz_class pn = a * pk + pk_prev;
    mpz_class qn = a * qk + qk_prev;
    if (qn > bound) {
      mpz_class steps = (bound - qk_prev) / qk;
      Rat convergent(pk, qk);
      if (steps == 0) return convergent;
      Rat semi(steps * pk + pk_prev, steps * qk + qk_prev);
      return (semi - value).abs() < (convergent - value).abs() ? semi : convergent;
    }
    pk_prev = std::move(pk);
    qk_prev = std::move(qk);
    pk = std::move(pn);
    qk = std::move(qn);
  }
  return Rat(pk, qk);
}

namespace {

Valuation<Rat> snap_valuation(const Valuation<Rat>& v, const Rat& tol, const mpz_class& denom_bound) {
  Valuation<Rat> out = v;
  for (auto& row : out.v)
    for (auto& entry : row) {
      Rat snapped = simplest_in_interval(entry - tol, entry + tol);
      if (snapped.den() > denom_bound) snapped = best_approx_bounded_denominator(entry, denom_bound);
      entry = std::move(snapped);
    }
  return out;
}

/// Always-feasible profile: per state the controller mixes the two extreme
/// actions of the delta-widened argmax set; the mixing weight is the clamped
/// interpolation toward the opponent's row of the candidate valuation.
Profile<Rat> extreme_pair_profile(const StochasticGame& game, const Valuation<Rat>& valuation,
                                  const Rat& delta) {
  ActionValuations<Rat> av = action_valuations(game, valuation);
  Profile<Rat> out;
  out.probs.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const int c = game.states[k].controller - 1;
    const int o = 1 - c;
    const std::size_t n = game.states[k].actions.size();
    Rat best = av.v[k][0][c];
    for (std::size_t a = 1; a < n; ++a)
      if (av.v[k][a][c] > best) best = av.v[k][a][c];
    int lo = -1, hi = -1;
    for (std::size_t a = 0; a < n; ++a) {
      if (best - av.v[k][a][c] > delta) continue;
      if (lo < 0 || av.v[k][a][o] < av.v[k][lo][o]) lo = static_cast<int>(a);
      if (hi < 0 || av.v[k][a][o] > av.v[k][hi][o]) hi = static_cast<int>(a);
    }
    out.probs[k].assign(n, Rat(0));
    const Rat& vlo = av.v[k][lo][o];
    const Rat& vhi = av.v[k][hi][o];
    if (lo == hi || vlo == vhi) {
      out.probs[k][lo] = Rat(1);
      continue;
    }
    Rat lambda = (valuation.v[o][k] - vlo) / (vhi - vlo);
    if (lambda.sign() < 0) lambda = Rat(0);
    if (lambda > Rat(1)) lambda = Rat(1);
    out.probs[k][hi] = lambda;
    out.probs[k][lo] = Rat(1) - lambda;
  }
  return out;
}

}  // namespace

SolveResult snap_and_certify(const StochasticGame& game, const Valuation<Rat>& valuation,
                             const SolverConfig& cfg) {
  require_two_players(game, "snap_and_certify");
  cfg.check();
  const Rat tol = Rat(16) * cfg.residual_target;
  Valuation<Rat> snapped = snap_valuation(valuation, tol, cfg.rationalize_denom_bound);

  SolveResult best;
  bool have = false;
  auto consider = [&](Profile<Rat> profile, bool recovered) {
    NashReport<Rat> report = verify_epsilon_nash(game, profile, Rat(0));
    if (!have || report.max_gap < best.certified_eps) {
      best.profile = std::move(profile);
      best.certified_eps = report.max_gap;
      best.exact = report.max_gap.is_zero();
      best.recovered = recovered;
      have = true;
    }
  };

  if (auto recovered = recover_profile<Rat>(game, snapped, cfg.argmax_tolerance))
    consider(std::move(*recovered), true);
  if (!have || !best.exact)
    consider(extreme_pair_profile(game, valuation, cfg.argmax_tolerance), false);

  best.valuation = induced_valuation(game, best.profile);
  return best;
}

Solve2pOutcome solve2p(const StochasticGame& game, const SolverConfig& cfg) {
  Solve2pOutcome outcome;
  outcome.iteration = iterate(game, cfg);
  outcome.result = snap_and_certify(game, outcome.iteration.valuation, cfg);
  return outcome;
}

}  // namespace sgnash
