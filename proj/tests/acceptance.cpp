// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here in exact rational arithmetic; the
// wall-clock caps are part of the criteria and enforced.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "sgnash/best_response.hpp"
#include "sgnash/evaluate.hpp"
#include "sgnash/reduction.hpp"
#include "sgnash/selection.hpp"
#include "sgnash/solver2p.hpp"
#include "sgnash/sqrtfamily.hpp"
#include "testutil.hpp"

using namespace sgnash;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream log;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      log << (log.str().empty() ? "" : "; ") << what;
    }
  }
};

PureCircuitInstance make_instance(std::vector<std::string> nodes, std::vector<Gate> gates) {
  PureCircuitInstance inst;
  inst.nodes = std::move(nodes);
  inst.gates = std::move(gates);
  return inst;
}

std::vector<std::pair<std::string, PureCircuitInstance>> reduction_corpus() {
  return {
      {"single NOT", make_instance({"u", "v"}, {{GateType::NOT, {"u"}, {"v"}}})},
      {"NOT-NOT cycle",
       make_instance({"u", "v"}, {{GateType::NOT, {"u"}, {"v"}}, {GateType::NOT, {"v"}, {"u"}}})},
      {"single OR", make_instance({"u0", "u1", "w"}, {{GateType::OR, {"u0", "u1"}, {"w"}}})},
      {"single PURIFY", make_instance({"u", "v0", "v1"}, {{GateType::PURIFY, {"u"}, {"v0", "v1"}}})},
      {"OR feeding NOT", make_instance({"u0", "u1", "w", "y"},
                                       {{GateType::OR, {"u0", "u1"}, {"w"}},
                                        {GateType::NOT, {"w"}, {"y"}}})},
  };
}

// --- criterion 1: the hardness-constant derivation ---------------------------

void criterion_epsilon_bound(Check& check) {
  EpsilonBoundReport report = verify_epsilon_bound();
  check.require(report.closed_form_matches, "f(l*, r*) != (3 - 2 sqrt2)/144");
  check.require(report.threshold_matches, "eps threshold != (3 - 2 sqrt2)/288");
  check.require(report.purify_terms_equal, "PURIFY min-arguments differ at m = (l+r)/2");
  check.require(report.or_term_is_min, "OR slack does not attain the three-way min");
  check.require(report.grid_ok, "1/200 grid point exceeds the closed-form maximum");
  check.require(epsilon_threshold().decimal(7) == "0.0005957", "threshold decimal drifted");
}

// --- criterion 2: reward windows ---------------------------------------------

void criterion_windows(Check& check) {
  RewardWindows w = compute_reward_windows(Rat(1, 2048));
  struct Expect {
    const RewardWindow* window;
    Rat reward;
    const char* name;
  } expectations[] = {{&w.not_gate, Rat(2, 3), "NOT"},
                      {&w.or_gate, Rat(43, 100), "OR"},
                      {&w.purify0, Rat(22, 25), "PURIFY0"},
                      {&w.purify1, Rat(11, 25), "PURIFY1"}};
  for (const auto& e : expectations) {
    check.require(e.window->chosen == e.reward, std::string(e.name) + ": unexpected default reward");
    check.require((QuadExt(e.reward) - e.window->lo).sign() > 0,
                  std::string(e.name) + ": reward not strictly above the lower endpoint");
    check.require((e.window->hi - QuadExt(e.reward)).sign() > 0,
                  std::string(e.name) + ": reward not strictly below the upper endpoint");
  }
  bool degenerates = false;
  try {
    compute_reward_windows(epsilon_threshold());
  } catch (const EmptyWindow& e) {
    degenerates = std::string(e.what()).find("OR") != std::string::npos;
  }
  check.require(degenerates, "OR window did not degenerate at the threshold epsilon");
}

// --- criterion 3: G(a) equilibria --------------------------------------------

void criterion_ga(Check& check) {
  for (long a = 1; a <= 10; ++a) {
    GaGadget gadget = build_Ga(a);
    EquilibriumCertificate cert = closed_form_equilibrium(gadget);
    check.require(cert.ok(), "certificate failed at a=" + std::to_string(a));
    NashReport<QuadExt> nash = verify_epsilon_nash(gadget.game, equilibrium_profile(gadget), Rat(0));
    check.require(nash.holds && nash.max_gap.sign() == 0,
                  "closed-form profile not an exact equilibrium at a=" + std::to_string(a));
    NoPureEquilibriumReport pure = check_no_pure_equilibrium(gadget);
    check.require(pure.all_rejected, "a pure profile survived at a=" + std::to_string(a));
  }
  check.require(build_Ga(1).x_star == QuadExt(Rat(64, 71)), "x*(1) != 64/71");
}

// --- criterion 4: player-4 payoffs -------------------------------------------

void criterion_player4(Check& check) {
  for (long a : {1L, 2L, 4L, 8L}) {
    Player4Payoff payoff = player4_payoff(a);
    check.require(payoff.q.sign() > 0, "q <= 0 at a=" + std::to_string(a));
    StochasticGame game = build_Gi(a, payoff.negated);
    GaGadget gadget = build_Ga(a);
    Profile<QuadExt> profile;
    profile.probs.resize(game.state_count());
    for (int k = 0; k < game.state_count(); ++k)
      profile.probs[k] = game.states[k].actions.size() == 2
                             ? std::vector<QuadExt>{gadget.x_star, QuadExt(Rat(1)) - gadget.x_star}
                             : std::vector<QuadExt>{QuadExt(Rat(1))};
    auto [b, d] = square_free_decompose(a);
    QuadExt expected = (QuadExt(payoff.p) + QuadExt(d, Rat(0), payoff.q * Rat(b))) / QuadExt(2);
    Valuation<QuadExt> values = evaluate_payoffs(game, profile);
    check.require(values.v[3][0] == expected, "player-4 payoff mismatch at a=" + std::to_string(a));
  }
}

// --- criterion 5: SqrtSum decisions ------------------------------------------

void criterion_sqrtsum(Check& check) {
  struct Fixed {
    SqrtSumInstance instance;
    CompareResult relation;
  } fixed[] = {{{{2, 8}, 4}, CompareResult::GREATER},
               {{{2, 3}, 4}, CompareResult::LESS},
               {{{9}, 2}, CompareResult::GREATER}};
  for (const auto& f : fixed) {
    SqrtSumDecision decision = decide_sqrtsum(f.instance);
    check.require(decision.relation == f.relation, "fixed instance decided wrongly");
    check.require(decision.interval_cross_check, "interval cross-check failed on fixed instance");
  }

  std::mt19937_64 rng(20251013);
  int tested = 0;
  while (tested < 200) {
    SqrtSumInstance inst;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) inst.a.push_back(1 + static_cast<long>(rng() % 50));
    inst.t = 1 + static_cast<long>(rng() % 30);
    CompareResult relation = radical_sum_compare(inst);
    if (relation == CompareResult::EQUAL) continue;
    SqrtSumGame built = build_sqrtsum_game(inst);
    Rat total_c(0), weighted_p(0);
    for (const auto& gadget : built.gadgets) {
      check.require(gadget.c * gadget.q == built.c_over_d, "c_i q_i != C/D");
      total_c += gadget.c;
      weighted_p += gadget.c * gadget.p;
    }
    check.require(total_c == Rat(1), "sum of c_i != 1");
    check.require(built.r0 == (weighted_p + built.c_over_d * Rat(inst.t)) / Rat(2),
                  "r0 identity failed");
    SqrtSumDecision decision = decide_sqrtsum(inst);
    check.require(decision.relation == relation, "decision disagrees with radical comparison");
    check.require(decision.interval_cross_check, "interval cross-check failed");
    ++tested;
  }
}

// --- criteria 6 and 7: reduction round trip and solver certification ---------

void criterion_roundtrip(Check& check) {
  ReductionParams params = make_params(Rat(1, 2048));
  SolverConfig cfg;
  for (const auto& [name, instance] : reduction_corpus()) {
    SoundnessReport report = soundness_check(instance, params, cfg);
    check.require(!(report.certified_eps > Rat(1, 2048)), name + ": certified eps exceeds 1/2048");
    check.require(report.violated_gates.empty(), name + ": decoded assignment violates a gate");
  }
}

void criterion_certification(Check& check) {
  ReductionParams params = make_params(Rat(1, 2048));
  SolverConfig cfg;
  const Rat micro(1, 1000000);
  for (const auto& [name, instance] : reduction_corpus()) {
    CompiledGame compiled = std::get<CompiledGame>(compile_circuit(instance, params));
    Solve2pOutcome outcome = solve2p(compiled.game, cfg);
    check.require(!(outcome.result.certified_eps > micro), name + ": certified eps above 1e-6");
    if (name != "NOT-NOT cycle")  // the cycle's equilibrium is mixed
      check.require(outcome.result.exact, name + ": expected an exact rational certificate");
    NashReport<Rat> reverify =
        verify_epsilon_nash(compiled.game, outcome.result.profile, outcome.result.certified_eps);
    check.require(reverify.holds, name + ": certificate does not re-verify");
    check.require(reverify.max_gap == outcome.result.certified_eps,
                  name + ": certified eps is not the exact max gap");
  }
}

// --- criterion 8: selection-circuit semantics --------------------------------

void criterion_selection(Check& check) {
  std::mt19937_64 rng(4242);
  auto random_unit = [&rng]() {
    long den = 1 + static_cast<long>(rng() % 64);
    return Rat(static_cast<long>(rng() % (den + 1)), den);
  };
  for (int trial = 0; trial < 500; ++trial) {
    Rat x1 = random_unit(), x2 = random_unit(), y1 = random_unit(), y2 = random_unit();
    FixedPointSet set = select_pair_fixed_points(x1, x2, y1, y2);
    check.require(select_pair_step(x1, x2, y1, y2, set.lo) == set.lo, "lo endpoint not fixed");
    check.require(select_pair_step(x1, x2, y1, y2, set.hi) == set.hi, "hi endpoint not fixed");
    for (long i = 0; i <= 1000; ++i) {
      Rat z(i, 1000);
      bool fixed = select_pair_step(x1, x2, y1, y2, z) == z;
      bool inside = set.lo <= z && z <= set.hi;
      if (fixed && !inside) {
        check.require(false, "scanned fixed point outside the predicted set");
        return;
      }
    }
  }
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> digits(2 * n, 0);
    for (;;) {
      std::vector<Rat> x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = Rat(digits[i], 8);
        y[i] = Rat(digits[n + i], 8);
      }
      Rat out = select_n(x, y);
      FixedPointSet box = select_interval(x, y);
      if (out < box.lo || out > box.hi) {
        check.require(false, "select_n left the argmax interval");
        return;
      }
      int pos = 2 * n - 1;
      while (pos >= 0 && digits[pos] == 8) digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
    }
  }
}

// --- criterion 9: game-core identities ---------------------------------------

void criterion_game_core(Check& check) {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    StochasticGame game = testutil::random_game(rng);
    Profile<Rat> profile = testutil::random_profile(rng, game);
    Valuation<Rat> induced = induced_valuation(game, profile);
    Valuation<Rat> payoff = evaluate_payoffs(game, profile);
    for (int i = 0; i < game.num_players; ++i)
      for (int k = 0; k < game.state_count(); ++k)
        if (!(payoff.v[i][k] == (Rat(1) - game.discount) * induced.v[i][k])) {
          check.require(false, "payoff != (1-gamma) * induced valuation");
          return;
        }
    if (trial % 10 == 0) {
      NashReport<Rat> nash = verify_epsilon_nash(game, profile, Rat(0));
      for (const auto& row : nash.gaps)
        for (const auto& gap : row) check.require(gap.sign() >= 0, "negative best-response gap");
    }
  }

  // Future-reward window on the compiled NOT gadget for p_u on the 1/4 grid.
  ReductionParams params = make_params(Rat(1, 2048));
  PureCircuitInstance inst = make_instance({"u", "v"}, {{GateType::NOT, {"u"}, {"v"}}});
  CompiledGame compiled = std::get<CompiledGame>(compile_circuit(inst, params));
  const StochasticGame& game = compiled.game;
  for (const Rat& pu : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
    Profile<Rat> profile;
    profile.probs.resize(game.state_count());
    for (int k = 0; k < game.state_count(); ++k) {
      if (game.states[k].actions.size() == 1) {
        profile.probs[k] = {Rat(1)};
      } else if (k == compiled.node_state.at("u")) {
        profile.probs[k] = {Rat(1) - pu, pu};
      } else {
        profile.probs[k] = {Rat(1, 2), Rat(1, 2)};
      }
    }
    Valuation<Rat> payoff = evaluate_payoffs(game, profile);
    for (int k = 0; k < game.state_count(); ++k) {
      int i = game.states[k].controller;
      Rat round2(0);
      const auto& actions = game.states[k].actions;
      for (std::size_t a = 0; a < actions.size(); ++a)
        for (const auto& [next, prob] : actions[a].transitions)
          for (std::size_t b = 0; b < game.states[next].actions.size(); ++b)
            round2 += profile.probs[k][a] * prob * profile.probs[next][b] *
                      game.states[next].actions[b].rewards[i - 1];
      bool lower = payoff.v[i - 1][k] >= Rat(1, 4) * round2;
      bool upper = payoff.v[i - 1][k] <= Rat(1, 4) * round2 + Rat(1, 12);
      check.require(lower && upper, "future-reward window violated on the NOT gadget");
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  double time_cap_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "epsilon-bound reproduction", 5.0, criterion_epsilon_bound},
      {2, "reward windows at 1/2048 and at the threshold", 1.0, criterion_windows},
      {3, "G(a) closed-form equilibria for a = 1..10", 10.0, criterion_ga},
      {4, "player-4 payoff extraction vs exact evaluation", 5.0, criterion_player4},
      {5, "SqrtSum decisions on fixed and 200 random instances", 30.0, criterion_sqrtsum},
      {6, "Pure-Circuit reduction round trip at eps = 1/2048", 300.0, criterion_roundtrip},
      {7, "solver certification on the compiled corpus", 300.0, criterion_certification},
      {8, "selection-circuit fixed points and interval contract", 60.0, criterion_selection},
      {9, "game-core identities and the future-reward window", 60.0, criterion_game_core},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.time_cap_seconds)
      check.require(false, "time cap exceeded (" + std::to_string(elapsed) + "s > " +
                               std::to_string(criterion.time_cap_seconds) + "s)");
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, elapsed, check.ok ? "" : " -- ",
                check.ok ? "" : check.log.str().c_str());
    if (!check.ok) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
