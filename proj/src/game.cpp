#include "sgnash/game.hpp"

#include <stdexcept>

namespace sgnash {

int StochasticGame::state_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown state id '" + id + "'");
  return it->second;
}

void StochasticGame::rebuild_index() {
  index_.clear();
  for (int k = 0; k < state_count(); ++k) index_[states[k].id] = k;
}

bool StochasticGame::rewards_in_unit_range() const {
  for (const auto& state : states)
    for (const auto& action : state.actions)
      for (const auto& r : action.rewards)
        if (r.sign() < 0 || r > Rat(1)) return false;
  return true;
}

bool StochasticGame::is_alternating() const {
  if (num_players != 2) return false;
  for (const auto& state : states)
    for (const auto& action : state.actions)
      for (const auto& [next, prob] : action.transitions) {
        (void)prob;
        if (states[next].controller == state.controller) return false;
      }
  return true;
}

ValidationReport validate_game(const StochasticGame& game) {
  ValidationReport report;
  auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };

  if (game.num_players < 1) flag("players must be >= 1");
  if (game.discount.sign() < 0 || game.discount >= Rat(1)) flag("discount must lie in [0, 1)");
  if (game.states.empty()) flag("game has no states");

  std::unordered_map<std::string, int> seen;
  for (const auto& state : game.states)
    if (++seen[state.id] == 2) flag("duplicate state id '" + state.id + "'");

  for (int k = 0; k < game.state_count(); ++k) {
    const auto& state = game.states[k];
    const std::string where = "state '" + state.id + "'";
    if (state.controller < 1 || state.controller > game.num_players)
      flag(where + ": controller out of range");
    if (state.actions.empty()) flag(where + ": empty action set");
    for (const auto& action : state.actions) {
      if (static_cast<int>(action.rewards.size()) != game.num_players)
        flag(where + " action '" + action.label + "': reward vector length != players");
      Rat mass(0);
      for (const auto& [next, prob] : action.transitions) {
        if (next < 0 || next >= game.state_count())
          flag(where + " action '" + action.label + "': transition to invalid state");
        if (prob.sign() < 0) flag(where + " action '" + action.label + "': negative probability");
        mass += prob;
      }
      if (!(mass == Rat(1))) flag(where + " action '" + action.label + "': transition mass != 1");
    }
  }

  report.alternating = report.ok() && game.is_alternating();
  report.rewards_in_unit_range = game.rewards_in_unit_range();
  return report;
}

}  // namespace sgnash
