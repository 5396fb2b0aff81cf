#pragma once

#include "sgnash/game.hpp"
#include "sgnash/linsolve.hpp"

namespace sgnash {

/// v[k][a][i]: value of action a in state k for player i against a given
/// continuation valuation: r^i_{ka} + gamma * sum_l p^{kl}_a v^i_l.
template <class S>
struct ActionValuations {
  std::vector<std::vector<std::vector<S>>> v;
};

template <class S>
ActionValuations<S> action_valuations(const StochasticGame& game, const Valuation<S>& valuation) {
  const S gamma{game.discount};
  ActionValuations<S> out;
  out.v.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const auto& actions = game.states[k].actions;
    out.v[k].resize(actions.size());
    for (std::size_t a = 0; a < actions.size(); ++a) {
      out.v[k][a].reserve(game.num_players);
      for (int i = 0; i < game.num_players; ++i) {
        S acc{actions[a].rewards[i]};
        for (const auto& [next, prob] : actions[a].transitions) acc += gamma * S(prob) * valuation.v[i][next];
        out.v[k][a].push_back(acc);
      }
    }
  }
  return out;
}

/// The unique valuation induced by a stationary profile: the solution of
/// (I - gamma P_x) v^i = r_x^i per player, where P_x and r_x are the
/// profile-averaged transition matrix and reward vectors. Unnormalized; the
/// normalized payoff carries an extra (1 - gamma) factor.
template <class S>
Valuation<S> induced_valuation(const StochasticGame& game, const Profile<S>& profile) {
  const int n = game.state_count();
  const S gamma{game.discount};
  std::vector<std::vector<S>> lhs(n, std::vector<S>(n, S(0)));
  std::vector<std::vector<S>> rhs(n, std::vector<S>(game.num_players, S(0)));
  for (int k = 0; k < n; ++k) {
    lhs[k][k] += S(1);
    const auto& actions = game.states[k].actions;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      const S& weight = profile.probs[k][a];
      if (sign(weight) == 0) continue;
      for (int i = 0; i < game.num_players; ++i) rhs[k][i] += weight * S(actions[a].rewards[i]);
      for (const auto& [next, prob] : actions[a].transitions) lhs[k][next] -= gamma * weight * S(prob);
    }
  }
  auto solved = solve_linear(std::move(lhs), std::move(rhs));
  Valuation<S> out = Valuation<S>::zero(game.num_players, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < game.num_players; ++i) out.v[i][k] = solved[k][i];
  return out;
}

/// Normalized discounted payoffs: (1 - gamma) times the induced valuation.
template <class S>
Valuation<S> evaluate_payoffs(const StochasticGame& game, const Profile<S>& profile) {
  Valuation<S> v = induced_valuation(game, profile);
  const S factor = S(1) - S(game.discount);
  for (auto& row : v.v)
    for (auto& entry : row) entry *= factor;
  return v;
}

/// One application of the update operator: the controller's row takes the max
/// action valuation, every other player's row averages under the controller's
/// mixture. The induced valuation is its unique fixed point.
template <class S>
Valuation<S> updated_valuation(const StochasticGame& game, const Valuation<S>& valuation,
                               const Profile<S>& profile) {
  ActionValuations<S> av = action_valuations(game, valuation);
  Valuation<S> out = Valuation<S>::zero(game.num_players, game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const int controller = game.states[k].controller - 1;
    const std::size_t n_actions = game.states[k].actions.size();
    for (int i = 0; i < game.num_players; ++i) {
      if (i == controller) {
        S best = av.v[k][0][i];
        for (std::size_t a = 1; a < n_actions; ++a)
          if (av.v[k][a][i] > best) best = av.v[k][a][i];
        out.v[i][k] = best;
      } else {
        S acc(0);
        for (std::size_t a = 0; a < n_actions; ++a) acc += profile.probs[k][a] * av.v[k][a][i];
        out.v[i][k] = acc;
      }
    }
  }
  return out;
}

}  // namespace sgnash
