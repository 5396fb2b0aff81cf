#pragma once

#include <map>
#include <variant>

#include "sgnash/game.hpp"
#include "sgnash/purecircuit.hpp"
#include "sgnash/quadext.hpp"
#include "sgnash/solver2p.hpp"

namespace sgnash {

/// Optimizing decode thresholds over Q(sqrt 2): l = (2 - sqrt2)/12,
/// r = (7 - sqrt2)/6, m = (l + r)/2, and the hardness threshold
/// (3 - 2 sqrt2)/288 on epsilon.
QuadExt threshold_l();
QuadExt threshold_r();
QuadExt threshold_m();
QuadExt epsilon_threshold();

/// Decode thresholds plus the rational auxiliary-state rewards of the
/// Pure-Circuit compiler. Rewards must sit strictly inside their windows.
struct ReductionParams {
  QuadExt l, r, m;
  Rat eps_target;
  Rat reward_not, reward_or, reward_p0, reward_p1;
};

struct RewardWindow {
  QuadExt lo, hi;  // open window (lo, hi)
  Rat chosen;      // strictly inside, verified exactly
};

struct RewardWindows {
  RewardWindow not_gate, or_gate, purify0, purify1;
};

struct EmptyWindow : std::runtime_error {
  explicit EmptyWindow(const std::string& which)
      : std::runtime_error("reward window for " + which + " is empty: epsilon too large") {}
};

/// Exact window endpoints for a given epsilon, each verified nonempty, with
/// one rational reward chosen per window. The canonical rewards
/// (2/3, 43/100, 22/25, 11/25) are used whenever they fit; otherwise the
/// midpoint is rounded to the coarsest decimal that stays strictly inside.
/// The QuadExt overload admits irrational epsilon, where a window can
/// degenerate to a point exactly.
RewardWindows compute_reward_windows(const Rat& eps);
RewardWindows compute_reward_windows(const QuadExt& eps);

ReductionParams make_params(const Rat& eps);
ReductionParams default_params();  // eps = 1/2048

nlohmann::json params_to_json(const ReductionParams& params);
ReductionParams params_from_json(const nlohmann::json& j);

struct EpsilonBoundReport {
  QuadExt f_star;             // l(1-r)/(l+1-r) * (r/4 - l/2 - 1/6) at the optimum
  QuadExt closed_form;        // (3 - 2 sqrt2)/144
  bool closed_form_matches = false;
  bool purify_terms_equal = false;   // the two PURIFY min-arguments coincide at m = (l+r)/2
  bool or_term_is_min = false;       // the OR argument attains the three-way min
  Rat grid_max;               // max of the objective on the 1/200 grid
  bool grid_ok = false;       // grid never exceeds f_star
  QuadExt eps_threshold;      // f_star / 2
  bool threshold_matches = false;

  bool ok() const { return closed_form_matches && purify_terms_equal && or_term_is_min && grid_ok && threshold_matches; }
};

/// Reproduces the optimization behind the hardness constant: the closed-form
/// maximum, the equal-argument structure of the inner min, and a rational
/// grid search that never exceeds the closed form.
EpsilonBoundReport verify_epsilon_bound();

/// A compiled Pure-Circuit game: 2 players, gamma = 1/2, strictly
/// alternating, rewards in [0,1], zero reward to every controller.
struct CompiledGame {
  StochasticGame game;
  std::map<std::string, int> node_state;  // circuit node -> state index
  ReductionParams params;
};

std::variant<CompiledGame, OddCycle> compile_circuit(const PureCircuitInstance& instance,
                                                     const ReductionParams& params);

/// Threshold decode: action-1 probability p at the node's state maps to 0
/// when p <= l, 1 when p >= r, bot otherwise; comparisons exact in Q(sqrt 2).
Assignment decode_profile(const CompiledGame& compiled, const Profile<Rat>& profile);

struct SoundnessReport {
  bool ok = false;
  bool converged = false;
  long iterations = 0;
  Rat residual;
  Rat certified_eps;
  bool eps_within_target = false;
  bool solver_exact = false;
  Assignment decoded;
  std::vector<int> violated_gates;
  std::map<std::string, Rat> node_probs;
  std::map<std::string, QuadExt> node_margins;  // distance to the nearer decode threshold
};

/// End-to-end witness of the reduction on one instance: compile, solve,
/// demand the certified gap meet the target, decode, check all gates.
SoundnessReport soundness_check(const PureCircuitInstance& instance, const ReductionParams& params,
                                const SolverConfig& solver_cfg);

}  // namespace sgnash
