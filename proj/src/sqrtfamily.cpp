#include "sgnash/sqrtfamily.hpp"

#include <algorithm>

#include "sgnash/best_response.hpp"
#include "sgnash/evaluate.hpp"

namespace sgnash {

namespace {

Rat big_L(long a) { return Rat(154 - 162 * mpz_class(a), 7); }
Rat big_H(long a) { return Rat(162 * mpz_class(a) - 91, 7); }

/// Eq-9 closed form over the square-free kernel d of a (sqrt(a) = b sqrt(d)):
/// x = (35 - 324a/7 + 9 sqrt(a)) / (2 (22 - 162a/7 - 1/8)).
QuadExt closed_form_x(long a) {
  auto [b, d] = square_free_decompose(a);
  QuadExt numerator(d, Rat(245 - 324 * mpz_class(a), 7), Rat(9 * b));
  Rat denominator(1225 - 1296 * mpz_class(a), 28);
  return numerator / QuadExt(denominator);
}

QuadExt companion_root_x(long a) {
  auto [b, d] = square_free_decompose(a);
  QuadExt numerator(d, Rat(245 - 324 * mpz_class(a), 7), Rat(-9 * b));
  Rat denominator(1225 - 1296 * mpz_class(a), 28);
  return numerator / QuadExt(denominator);
}

/// Reward vector on the stop action of s_j: the controller takes 1, the next
/// player around the cycle 4L, the one after 2H; player 4 (when present)
/// takes 1, 2 or 4 by controller, negated on demand.
std::vector<Rat> stop_rewards(long a, int j, int players, bool negated) {
  std::vector<Rat> rewards(players, Rat(0));
  rewards[j - 1] = Rat(1);
  rewards[(j % 3 + 1) - 1] = Rat(4) * big_L(a);
  rewards[((j + 1) % 3 + 1) - 1] = Rat(2) * big_H(a);
  if (players == 4) {
    Rat p4 = Rat(1 << (j - 1));  // 1, 2, 4
    rewards[3] = negated ? -p4 : p4;
  }
  return rewards;
}

void append_cycle_states(StochasticGame& game, long a, const std::string& suffix, int players,
                         bool negated) {
  for (int j = 1; j <= 3; ++j) {
    GameState state;
    state.id = "s" + std::to_string(j) + suffix;
    state.controller = j;
    GameAction go;
    go.label = "0";
    go.rewards.assign(players, Rat(0));
    GameAction stop;
    stop.label = "1";
    stop.rewards = stop_rewards(a, j, players, negated);
    state.actions = {std::move(go), std::move(stop)};
    game.states.push_back(std::move(state));
  }
}

void patch_cycle_transitions(StochasticGame& game, int base, int absorb_index) {
  for (int j = 0; j < 3; ++j) {
    game.states[base + j].actions[0].transitions = {{base + (j + 1) % 3, Rat(1)}};
    game.states[base + j].actions[1].transitions = {{absorb_index, Rat(1)}};
  }
}

GameState make_absorbing(const std::string& id, int players, int self_index) {
  GameState state;
  state.id = id;
  state.controller = 1;
  GameAction stay;
  stay.label = "0";
  stay.rewards.assign(players, Rat(0));
  stay.transitions = {{self_index, Rat(1)}};
  state.actions = {std::move(stay)};
  return state;
}

}  // namespace

GaGadget build_Ga(long a) {
  if (a < 1) throw std::invalid_argument("build_Ga: a must be >= 1");
  GaGadget gadget;
  gadget.a = a;
  gadget.L = big_L(a);
  gadget.H = big_H(a);
  gadget.game.num_players = 3;
  gadget.game.discount = Rat(1, 2);
  append_cycle_states(gadget.game, a, "", 3, false);
  patch_cycle_transitions(gadget.game, 0, 3);
  gadget.game.states.push_back(make_absorbing("absorb", 3, 3));
  gadget.game.rebuild_index();
  gadget.x_star = closed_form_x(a);
  return gadget;
}

EquilibriumCertificate closed_form_equilibrium(const GaGadget& gadget) {
  EquilibriumCertificate cert;
  const QuadExt& x = gadget.x_star;
  const QuadExt L{gadget.L};
  const QuadExt H{gadget.H};
  cert.x_star = x;

  QuadExt one{Rat(1)};
  QuadExt lhs = one - x * x / QuadExt(8);
  QuadExt rhs = (one - x) * H + x * (one - x) * L;
  cert.indifference_holds = lhs == rhs;
  cert.inside_unit_interval = x.sign() > 0 && (one - x).sign() > 0;

  Rat discriminant = (gadget.H - gadget.L) * (gadget.H - gadget.L) -
                     Rat(4) * (gadget.L - Rat(1, 8)) * (Rat(1) - gadget.H);
  Rat target(mpz_class(81 * mpz_class(gadget.a)));
  cert.discriminant_is_81a =
      discriminant == target && Rat(77) - Rat(7, 2) * gadget.L == target;

  cert.companion_root = companion_root_x(gadget.a);
  cert.companion_exceeds_one = (cert.companion_root - one).sign() > 0;

  Rat g0 = Rat(1) - gadget.H;
  Rat g1 = (gadget.L - Rat(1, 8)) + (gadget.H - gadget.L) + (Rat(1) - gadget.H);
  cert.quadratic_signs_ok = g0.sign() < 0 && g1.sign() > 0;
  return cert;
}

Profile<QuadExt> equilibrium_profile(const GaGadget& gadget) {
  Profile<QuadExt> profile;
  profile.probs.resize(gadget.game.state_count());
  for (int j = 0; j < 3; ++j)
    profile.probs[j] = {gadget.x_star, QuadExt(Rat(1)) - gadget.x_star};
  profile.probs[3] = {QuadExt(Rat(1))};
  return profile;
}

NoPureEquilibriumReport check_no_pure_equilibrium(const GaGadget& gadget) {
  NoPureEquilibriumReport report;
  report.all_rejected = true;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> choice = {mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, 0};
    Profile<Rat> profile = pure_profile<Rat>(gadget.game, choice);
    NashReport<Rat> nash = verify_epsilon_nash(gadget.game, profile, Rat(0));
    PureProfileRejection rejection;
    rejection.stop_choice = {choice[0], choice[1], choice[2]};
    rejection.gap = nash.max_gap;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < gadget.game.state_count(); ++k)
        if (nash.gaps[i][k] == nash.max_gap) {
          rejection.improving_player = i + 1;
          goto found;
        }
  found:
    if (nash.max_gap.sign() <= 0) report.all_rejected = false;
    report.rejections.push_back(std::move(rejection));
  }
  return report;
}

Player4Payoff player4_payoff(long a) {
  auto [b, d] = square_free_decompose(a);
  QuadExt x = closed_form_x(a);
  QuadExt x3 = x * x * x;
  QuadExt v = (QuadExt(8) - QuadExt(8) * x3) / (QuadExt(8) - x3);

  Player4Payoff out;
  if (v.is_rational()) {
    // Perfect-square a: rewrite v as (v / sqrt(a)) * sqrt(a).
    out.p = Rat(0);
    out.q = v.rational_value() / Rat(b);
  } else {
    // v = p + q' sqrt(d) = p + (q'/b) sqrt(a).
    out.p = v.rational_part();
    out.q = v.radical_part() / Rat(b);
  }
  if (out.q.sign() < 0) {
    out.p = -out.p;
    out.q = -out.q;
    out.negated = true;
  }
  if (out.q.sign() == 0) throw std::logic_error("player4_payoff: vanishing radical coefficient");
  return out;
}

StochasticGame build_Gi(long a, bool negated) {
  StochasticGame game;
  game.num_players = 4;
  game.discount = Rat(1, 2);
  append_cycle_states(game, a, "", 4, negated);
  patch_cycle_transitions(game, 0, 3);
  game.states.push_back(make_absorbing("absorb", 4, 3));
  game.rebuild_index();
  return game;
}

std::string compare_result_name(CompareResult r) {
  switch (r) {
    case CompareResult::LESS: return "LESS";
    case CompareResult::EQUAL: return "EQUAL";
    case CompareResult::GREATER: return "GREATER";
  }
  return "?";
}

namespace {

struct RadicalTerm {
  Rat coefficient;
  long radicand;  // sqrt(radicand), radicand >= 1
};

/// Merge c_i sqrt(r_i) + c_j sqrt(r_j) -> (c_i + sqrt(r_i r_j) c_j / r_i) sqrt(r_i)
/// whenever r_i r_j is a perfect square, until the radicals are pairwise
/// independent; drop vanished terms.
std::vector<RadicalTerm> merge_radicals(std::vector<RadicalTerm> terms) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < terms.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < terms.size() && !merged; ++j) {
        mpz_class product = mpz_class(terms[i].radicand) * mpz_class(terms[j].radicand);
        if (!is_perfect_square(product)) continue;
        Rat root{isqrt(product)};
        terms[i].coefficient += root * terms[j].coefficient / Rat(terms[i].radicand);
        terms.erase(terms.begin() + j);
        merged = true;
      }
    }
    terms.erase(std::remove_if(terms.begin(), terms.end(),
                               [](const RadicalTerm& t) { return t.coefficient.is_zero(); }),
                terms.end());
  }
  return terms;
}

/// Sign of a merged, provably nonzero radical sum via interval refinement.
int interval_sign(const std::vector<RadicalTerm>& terms) {
  Rat eps(1, 16);
  for (;;) {
    RationalInterval total{Rat(0), Rat(0)};
    for (const RadicalTerm& term : terms)
      total = total + sqrt_enclosure(term.radicand, eps).scaled(term.coefficient);
    if (int s = total.sign(); s != 0) return s;
    eps /= Rat(16);
  }
}

std::vector<RadicalTerm> instance_terms(const SqrtSumInstance& instance) {
  std::vector<RadicalTerm> terms;
  for (long a : instance.a) {
    if (a < 1) throw std::invalid_argument("SqrtSum: entries must be >= 1");
    terms.push_back({Rat(1), a});
  }
  terms.push_back({Rat(-instance.t), 1});
  return terms;
}

}  // namespace

CompareResult radical_sum_compare(const SqrtSumInstance& instance) {
  if (instance.a.empty()) throw std::invalid_argument("SqrtSum: need at least one radicand");
  std::vector<RadicalTerm> terms = merge_radicals(instance_terms(instance));
  if (terms.empty()) return CompareResult::EQUAL;
  return interval_sign(terms) > 0 ? CompareResult::GREATER : CompareResult::LESS;
}

SqrtSumGame build_sqrtsum_game(const SqrtSumInstance& instance) {
  if (radical_sum_compare(instance) == CompareResult::EQUAL) throw EqualInstance();

  SqrtSumGame out;
  const int n = static_cast<int>(instance.a.size());
  Rat C(1);
  for (int i = 0; i < n; ++i) {
    SqrtSumGame::GadgetInfo info;
    info.a = instance.a[i];
    Player4Payoff payoff = player4_payoff(instance.a[i]);
    info.p = payoff.p;
    info.q = payoff.q;
    info.negated = payoff.negated;
    C *= info.q;
    out.gadgets.push_back(std::move(info));
  }
  Rat D(0);
  for (const auto& gadget : out.gadgets) D += C / gadget.q;
  for (auto& gadget : out.gadgets) gadget.c = (C / gadget.q) / D;
  out.c_over_d = C / D;

  Rat weighted_p(0);
  for (const auto& gadget : out.gadgets) weighted_p += gadget.c * gadget.p;
  out.r0 = (weighted_p + out.c_over_d * Rat(instance.t)) / Rat(2);

  // Assemble: per-gadget cyclic states, then the hub, then one absorbing state.
  StochasticGame& game = out.game;
  game.num_players = 4;
  game.discount = Rat(1, 2);
  const int absorb_index = 3 * n + 1;
  for (int i = 0; i < n; ++i) {
    out.gadgets[i].first_state = 3 * i;
    append_cycle_states(game, instance.a[i], "_" + std::to_string(i + 1), 4, out.gadgets[i].negated);
    patch_cycle_transitions(game, 3 * i, absorb_index);
  }
  out.hub_state = 3 * n;
  GameState hub;
  hub.id = "s4";
  hub.controller = 4;
  GameAction enter;
  enter.label = "0";
  enter.rewards.assign(4, Rat(0));
  for (int i = 0; i < n; ++i)
    enter.transitions.emplace_back(out.gadgets[i].first_state, out.gadgets[i].c);
  GameAction stop;
  stop.label = "1";
  stop.rewards.assign(4, Rat(0));
  stop.rewards[3] = out.r0;
  stop.transitions = {{absorb_index, Rat(1)}};
  hub.actions = {std::move(enter), std::move(stop)};
  game.states.push_back(std::move(hub));
  game.states.push_back(make_absorbing("absorb", 4, absorb_index));
  game.rebuild_index();
  return out;
}

SqrtSumDecision decide_sqrtsum(const SqrtSumInstance& instance) {
  CompareResult relation = radical_sum_compare(instance);
  if (relation == CompareResult::EQUAL) throw EqualInstance();
  SqrtSumGame built = build_sqrtsum_game(instance);

  SqrtSumDecision decision;
  decision.relation = relation;
  decision.r0 = built.r0;
  decision.c_over_d = built.c_over_d;
  decision.witness_action = relation == CompareResult::GREATER ? 0 : 1;

  // Interval cross-check of V0 - V1 = (c_i p_i terms cancel)
  //   (1/4) sum c_i q_i sqrt(a_i) - (1/4)(C/D) t.
  std::vector<RadicalTerm> terms;
  for (const auto& gadget : built.gadgets)
    terms.push_back({gadget.c * gadget.q / Rat(4), gadget.a});
  terms.push_back({-built.c_over_d * Rat(instance.t) / Rat(4), 1});
  terms = merge_radicals(terms);
  int s = terms.empty() ? 0 : interval_sign(terms);
  decision.interval_cross_check =
      (s > 0) == (relation == CompareResult::GREATER) && s != 0;
  return decision;
}

}  // namespace sgnash
