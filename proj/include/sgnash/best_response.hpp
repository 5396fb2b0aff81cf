#pragma once

#include <optional>

#include "sgnash/evaluate.hpp"

namespace sgnash {

/// Exact best response of one player against a fixed profile of the others.
template <class S>
struct BestResponse {
  std::vector<S> values;    // normalized optimal payoff per start state
  std::vector<int> policy;  // optimal action per state controlled by the player, -1 elsewhere
};

namespace detail {

/// Collapses the game, with all players but `player` fixed to `profile`, into
/// the MDP rows seen by `player`: at states the player controls every action
/// stays a choice, elsewhere rewards and transitions are averaged under the
/// controller's mixture.
template <class S>
struct MdpRow {
  std::vector<S> reward;                               // per choice
  std::vector<std::vector<std::pair<int, S>>> moves;   // per choice: (next, prob)
};

template <class S>
std::vector<MdpRow<S>> fixed_opponent_mdp(const StochasticGame& game, const Profile<S>& profile,
                                          int player) {
  std::vector<MdpRow<S>> rows(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const auto& state = game.states[k];
    if (state.controller == player) {
      for (const auto& action : state.actions) {
        rows[k].reward.push_back(S(action.rewards[player - 1]));
        std::vector<std::pair<int, S>> moves;
        for (const auto& [next, prob] : action.transitions) moves.emplace_back(next, S(prob));
        rows[k].moves.push_back(std::move(moves));
      }
    } else {
      S reward(0);
      std::vector<S> mass(game.state_count(), S(0));
      for (std::size_t a = 0; a < state.actions.size(); ++a) {
        const S& w = profile.probs[k][a];
        if (sign(w) == 0) continue;
        reward += w * S(state.actions[a].rewards[player - 1]);
        for (const auto& [next, prob] : state.actions[a].transitions) mass[next] += w * S(prob);
      }
      std::vector<std::pair<int, S>> moves;
      for (int l = 0; l < game.state_count(); ++l)
        if (sign(mass[l]) != 0) moves.emplace_back(l, mass[l]);
      rows[k].reward.push_back(reward);
      rows[k].moves.push_back(std::move(moves));
    }
  }
  return rows;
}

/// Policy evaluation: unnormalized values of a pure policy in the MDP.
template <class S>
std::vector<S> mdp_policy_values(const std::vector<MdpRow<S>>& rows, const Rat& gamma,
                                 const std::vector<int>& policy) {
  const int n = static_cast<int>(rows.size());
  const S g{gamma};
  std::vector<std::vector<S>> lhs(n, std::vector<S>(n, S(0)));
  std::vector<std::vector<S>> rhs(n, std::vector<S>(1, S(0)));
  for (int k = 0; k < n; ++k) {
    lhs[k][k] += S(1);
    int pick = policy[k];
    rhs[k][0] = rows[k].reward[pick];
    for (const auto& [next, prob] : rows[k].moves[pick]) lhs[k][next] -= g * prob;
  }
  auto solved = solve_linear(std::move(lhs), std::move(rhs));
  std::vector<S> values(n);
  for (int k = 0; k < n; ++k) values[k] = solved[k][0];
  return values;
}

}  // namespace detail

/// Howard policy iteration over exact scalars. Improvement switches to the
/// lowest-index argmax action; termination follows from finiteness of pure
/// policies and exact comparisons.
template <class S>
BestResponse<S> best_response(const StochasticGame& game, const Profile<S>& profile, int player) {
  if (player < 1 || player > game.num_players) throw std::out_of_range("best_response: bad player");
  auto rows = detail::fixed_opponent_mdp(game, profile, player);
  const int n = game.state_count();
  const S g{game.discount};

  std::vector<int> policy(n, 0);
  std::vector<S> values = detail::mdp_policy_values(rows, game.discount, policy);
  for (;;) {
    std::vector<int> improved = policy;
    for (int k = 0; k < n; ++k) {
      int best = 0;
      S best_value = rows[k].reward[0];
      for (const auto& [next, prob] : rows[k].moves[0]) best_value += g * prob * values[next];
      for (std::size_t a = 1; a < rows[k].reward.size(); ++a) {
        S q = rows[k].reward[a];
        for (const auto& [next, prob] : rows[k].moves[a]) q += g * prob * values[next];
        if (q > best_value) {
          best_value = q;
          best = static_cast<int>(a);
        }
      }
      improved[k] = best;
    }
    if (improved == policy) break;
    policy = improved;
    values = detail::mdp_policy_values(rows, game.discount, policy);
  }

  BestResponse<S> out;
  const S norm = S(1) - g;
  out.values.reserve(n);
  for (const S& v : values) out.values.push_back(norm * v);
  out.policy.assign(n, -1);
  for (int k = 0; k < n; ++k)
    if (game.states[k].controller == player) out.policy[k] = policy[k];
  return out;
}

/// Exact epsilon-Nash certificate: per player and start state the deviation
/// gap best-response payoff minus profile payoff, all computed exactly.
template <class S>
struct NashReport {
  std::vector<std::vector<S>> gaps;            // [player][state], each >= 0
  S max_gap{0};
  std::vector<std::vector<int>> best_policies; // [player][state]
  bool holds = false;                          // max_gap <= eps
};

template <class S>
NashReport<S> verify_epsilon_nash(const StochasticGame& game, const Profile<S>& profile,
                                  const Rat& eps) {
  if (eps.sign() < 0) throw std::invalid_argument("verify_epsilon_nash: eps must be >= 0");
  Valuation<S> payoff = evaluate_payoffs(game, profile);
  NashReport<S> report;
  report.gaps.resize(game.num_players);
  report.best_policies.resize(game.num_players);
  for (int i = 1; i <= game.num_players; ++i) {
    BestResponse<S> br = best_response(game, profile, i);
    report.best_policies[i - 1] = br.policy;
    auto& gaps = report.gaps[i - 1];
    gaps.reserve(game.state_count());
    for (int k = 0; k < game.state_count(); ++k) {
      S gap = br.values[k] - payoff.v[i - 1][k];
      if (gap > report.max_gap) report.max_gap = gap;
      gaps.push_back(std::move(gap));
    }
  }
  report.holds = !(report.max_gap > S(eps));
  return report;
}

struct OneStepReport {
  bool optimal = true;
  std::vector<std::pair<int, int>> violations;  // (state, action) with weight on non-argmax
};

/// True iff every action played with positive probability attains the
/// controller's max action valuation, exactly.
template <class S>
OneStepReport one_step_optimal_check(const StochasticGame& game, const Valuation<S>& valuation,
                                     const Profile<S>& profile) {
  ActionValuations<S> av = action_valuations(game, valuation);
  OneStepReport report;
  for (int k = 0; k < game.state_count(); ++k) {
    const int controller = game.states[k].controller - 1;
    const std::size_t n_actions = game.states[k].actions.size();
    S best = av.v[k][0][controller];
    for (std::size_t a = 1; a < n_actions; ++a)
      if (av.v[k][a][controller] > best) best = av.v[k][a][controller];
    for (std::size_t a = 0; a < n_actions; ++a) {
      if (sign(profile.probs[k][a]) > 0 && !(av.v[k][a][controller] == best)) {
        report.optimal = false;
        report.violations.emplace_back(k, static_cast<int>(a));
      }
    }
  }
  return report;
}

/// Recovers a stationary profile from a candidate Nash valuation of a
/// 2-player game by the closed-form two-point mixture: per state the
/// controller mixes the two extreme actions of the (widened) argmax set so
/// that the opponent's row is matched. Returns nullopt when the valuation is
/// not a Nash valuation (target outside the achievable interval, or a
/// controller row that is not the max of its action valuations).
template <class S>
std::optional<Profile<S>> recover_profile(const StochasticGame& game, const Valuation<S>& valuation,
                                          const S& argmax_tolerance = S(0)) {
  if (game.num_players != 2)
    throw std::invalid_argument("recover_profile: requires a 2-player game");
  ActionValuations<S> av = action_valuations(game, valuation);
  Profile<S> out;
  out.probs.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const int c = game.states[k].controller - 1;
    const int o = 1 - c;
    const std::size_t n_actions = game.states[k].actions.size();
    S best = av.v[k][0][c];
    for (std::size_t a = 1; a < n_actions; ++a)
      if (av.v[k][a][c] > best) best = av.v[k][a][c];
    // Controller's own row must attain the max (within the widening).
    S own_gap = best - valuation.v[c][k];
    if (own_gap > argmax_tolerance || valuation.v[c][k] > best + argmax_tolerance)
      return std::nullopt;

    // Widened one-step optimal set B(k), then its extreme actions by the
    // opponent's action valuation.
    int lo = -1, hi = -1;
    for (std::size_t a = 0; a < n_actions; ++a) {
      if (best - av.v[k][a][c] > argmax_tolerance) continue;
      if (lo < 0 || av.v[k][a][o] < av.v[k][lo][o]) lo = static_cast<int>(a);
      if (hi < 0 || av.v[k][a][o] > av.v[k][hi][o]) hi = static_cast<int>(a);
    }
    const S& target = valuation.v[o][k];
    const S& vlo = av.v[k][lo][o];
    const S& vhi = av.v[k][hi][o];
    if (target < vlo || target > vhi) return std::nullopt;

    out.probs[k].assign(n_actions, S(0));
    if (lo == hi || target == vlo) {
      out.probs[k][lo] = S(1);
    } else if (target == vhi) {
      out.probs[k][hi] = S(1);
    } else {
      S lambda = (target - vlo) / (vhi - vlo);
      out.probs[k][hi] = lambda;
      out.probs[k][lo] = S(1) - lambda;
    }
  }
  return out;
}

}  // namespace sgnash
