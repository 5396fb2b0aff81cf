#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sgnash/rational.hpp"

namespace sgnash {

/// One action of the controlling player: a reward per player plus an exact
/// transition distribution over successor states.
struct GameAction {
  std::string label;
  std::vector<Rat> rewards;                        // length = num_players
  std::vector<std::pair<int, Rat>> transitions;    // (state index, probability)
};

struct GameState {
  std::string id;
  int controller = 1;  // 1-based player index
  std::vector<GameAction> actions;
};

/// Finite perfect-information discounted stochastic game. In every state
/// exactly one player (the controller) chooses among the actions; rewards and
/// transition probabilities are exact rationals, the discount is in [0, 1).
struct StochasticGame {
  int num_players = 0;
  Rat discount;
  std::vector<GameState> states;

  int state_count() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& id) const;
  void rebuild_index();

  bool rewards_in_unit_range() const;
  /// 2-player games only: every transition leaves the controller's partition.
  bool is_alternating() const;

 private:
  std::unordered_map<std::string, int> index_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool alternating = false;
  bool rewards_in_unit_range = false;

  bool ok() const { return violations.empty(); }
};

/// Checks all structural invariants: controllers in range, nonempty action
/// sets, reward vectors of length n, transition targets valid, transition
/// mass exactly 1, discount in [0, 1). Violations are data, not errors.
ValidationReport validate_game(const StochasticGame& game);

/// Per-state mixture over the controller's actions. Scalar type is Rat for
/// solver output and file I/O, QuadExt when certifying radical equilibria.
template <class S>
struct Profile {
  std::vector<std::vector<S>> probs;  // [state][action]
};

/// Per-player, per-state value vector.
template <class S>
struct Valuation {
  std::vector<std::vector<S>> v;  // [player][state]

  static Valuation zero(int players, int states) {
    Valuation out;
    out.v.assign(players, std::vector<S>(states, S(0)));
    return out;
  }
};

template <class S>
std::vector<std::string> validate_profile(const StochasticGame& game, const Profile<S>& profile) {
  std::vector<std::string> issues;
  if (static_cast<int>(profile.probs.size()) != game.state_count()) {
    issues.push_back("profile covers " + std::to_string(profile.probs.size()) + " states, game has " +
                     std::to_string(game.state_count()));
    return issues;
  }
  for (int k = 0; k < game.state_count(); ++k) {
    const auto& row = profile.probs[k];
    if (row.size() != game.states[k].actions.size()) {
      issues.push_back("state '" + game.states[k].id + "': wrong number of action weights");
      continue;
    }
    S total(0);
    for (const S& w : row) {
      if (sign(w) < 0) issues.push_back("state '" + game.states[k].id + "': negative weight");
      total += w;
    }
    if (!(total == S(1))) issues.push_back("state '" + game.states[k].id + "': weights do not sum to 1");
  }
  return issues;
}

/// Pure profile playing `choice[k]` at every state (single-action states may
/// pass any index, it is clamped to 0).
template <class S>
Profile<S> pure_profile(const StochasticGame& game, const std::vector<int>& choice) {
  Profile<S> out;
  out.probs.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    int n = static_cast<int>(game.states[k].actions.size());
    int pick = n == 1 ? 0 : choice[k];
    out.probs[k].assign(n, S(0));
    out.probs[k][pick] = S(1);
  }
  return out;
}

}  // namespace sgnash
