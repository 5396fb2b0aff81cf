#pragma once

#include <vector>

#include "sgnash/game.hpp"
#include "sgnash/quadext.hpp"

namespace sgnash {

/// The 3-player stop/continue game G(a): s_j is controlled by player j,
/// action 0 cycles to the next state with zero rewards, action 1 pays
/// (1, 4L, 2H) rotated by j and absorbs. L = 22 - 162a/7, H = 162a/7 - 13,
/// gamma = 1/2. Its unique stationary equilibrium probability lies in
/// Q(sqrt a).
struct GaGadget {
  long a = 1;
  Rat L, H;
  StochasticGame game;  // states s1, s2, s3, absorb; actions "0" (continue), "1" (stop)
  QuadExt x_star;       // equilibrium probability of action 0, over the square-free kernel of a
};

GaGadget build_Ga(long a);

/// The closed-form equilibrium together with every checkable consequence of
/// its derivation, all verified exactly in Q(sqrt a).
struct EquilibriumCertificate {
  QuadExt x_star;
  bool indifference_holds = false;   // 1 - x^2/8 = (1-x)H + x(1-x)L
  bool inside_unit_interval = false; // 0 < x < 1
  bool discriminant_is_81a = false;  // (H-L)^2 - 4(L-1/8)(1-H) = 81a = 77 - (7/2)L
  QuadExt companion_root;
  bool companion_exceeds_one = false;
  bool quadratic_signs_ok = false;   // g(0) < 0 and g(1) > 0

  bool ok() const {
    return indifference_holds && inside_unit_interval && discriminant_is_81a &&
           companion_exceeds_one && quadratic_signs_ok;
  }
};

EquilibriumCertificate closed_form_equilibrium(const GaGadget& gadget);

/// The symmetric profile playing action 0 with probability x_star everywhere.
Profile<QuadExt> equilibrium_profile(const GaGadget& gadget);

/// Exhaustive rejection of the 8 pure profiles: each one admits a player with
/// a strictly positive exact deviation gap.
struct PureProfileRejection {
  std::vector<int> stop_choice;  // action index per cyclic state
  int improving_player = 0;      // 1-based
  Rat gap;                       // exact positive deviation gap
};
struct NoPureEquilibriumReport {
  bool all_rejected = false;
  std::vector<PureProfileRejection> rejections;
};
NoPureEquilibriumReport check_no_pure_equilibrium(const GaGadget& gadget);

/// Player 4's unnormalized valuation v = (8 - 8x^3)/(8 - x^3) at s_1 of the
/// extended gadget, expressed as p + q sqrt(a) with q > 0; `negated` records
/// whether the gadget must flip player 4's rewards to make q positive.
struct Player4Payoff {
  Rat p, q;
  bool negated = false;
};
Player4Payoff player4_payoff(long a);

/// The 4-player gadget: G(a) extended with player-4 rewards 1, 2, 4 on the
/// stop actions of players 1, 2, 3 (negated when the payoff demands it).
StochasticGame build_Gi(long a, bool negated);

struct SqrtSumInstance {
  std::vector<long> a;
  long t = 0;
};

enum class CompareResult { LESS, EQUAL, GREATER };
std::string compare_result_name(CompareResult r);

/// Exact sign of sum(sqrt(a_i)) - t. Equality is decided by merging radicals
/// whose pairwise product is a perfect square until the surviving radicals
/// are linearly independent; strict order then follows from adaptive-width
/// interval enclosures of the merged form.
CompareResult radical_sum_compare(const SqrtSumInstance& instance);

struct EqualInstance : std::runtime_error {
  EqualInstance() : std::runtime_error("sum of radicals equals t exactly") {}
};

struct SqrtSumGame {
  StochasticGame game;  // 4 players: gadget states, hub s4, shared absorbing state
  struct GadgetInfo {
    long a = 1;
    Rat p, q;            // player-4 payoff pair, q > 0
    bool negated = false;
    Rat c;               // hub branch probability
    int first_state = 0; // index of s1^i
  };
  std::vector<GadgetInfo> gadgets;
  Rat r0;
  Rat c_over_d;  // the common value c_i * q_i = C / D
  int hub_state = 0;
};

/// Hub construction of the SqrtSum reduction: weights c_i = d_i / D with
/// d_i = C / q_i, C = prod q_i, and stop reward r0 = (sum c_i p_i + (C/D) t)/2.
/// Requires a strict instance; EQUAL is screened out beforehand.
SqrtSumGame build_sqrtsum_game(const SqrtSumInstance& instance);

struct SqrtSumDecision {
  CompareResult relation = CompareResult::EQUAL;  // LESS or GREATER
  int witness_action = 0;  // player 4's equilibrium action at the hub
  Rat r0;
  Rat c_over_d;
  bool interval_cross_check = false;  // interval evaluation of V0 - V1 agrees
};

/// Decides sum(sqrt(a_i)) vs t through the game: V0 - V1 = (C/D)(sum - t)/4
/// symbolically, cross-checked by interval arithmetic on the radicals.
SqrtSumDecision decide_sqrtsum(const SqrtSumInstance& instance);

}  // namespace sgnash
