#include <doctest.h>

#include "sgnash/reduction.hpp"
#include "sgnash/solver2p.hpp"
#include "testutil.hpp"

using namespace sgnash;
using namespace sgnash::testutil;

namespace {

PureCircuitInstance single_not() {
  PureCircuitInstance inst;
  inst.nodes = {"u", "v"};
  inst.gates = {{GateType::NOT, {"u"}, {"v"}}};
  return inst;
}

PureCircuitInstance not_not_cycle() {
  PureCircuitInstance inst;
  inst.nodes = {"u", "v"};
  inst.gates = {{GateType::NOT, {"u"}, {"v"}}, {GateType::NOT, {"v"}, {"u"}}};
  return inst;
}

StochasticGame compiled(const PureCircuitInstance& inst) {
  auto result = compile_circuit(inst, default_params());
  return std::get<CompiledGame>(result).game;
}

/// Zinkevich-Greenwald-Littman-style 2-state stop/continue game with the
/// mixed equilibrium (3/5, 3/5) when r_stop = 2/3: identical in shape to the
/// compiled NOT-NOT cycle but written out directly.
StochasticGame two_state_mixed_game() {
  StochasticGame game;
  game.num_players = 2;
  game.discount = Rat(1, 2);
  for (int j = 0; j < 2; ++j) {
    GameState node;
    node.id = j == 0 ? "a" : "b";
    node.controller = j + 1;
    GameAction pass;  // hand over to the other node
    pass.label = "0";
    pass.rewards = {Rat(0), Rat(0)};
    pass.transitions = {{1 - j, Rat(1)}};
    GameAction stop;  // give the opponent 1 now, then they collect 2/3 next
    stop.label = "1";
    stop.rewards = {Rat(0), Rat(0)};
    stop.rewards[1 - j] = Rat(1);
    stop.transitions = {{2 + j, Rat(1)}};
    node.actions = {std::move(pass), std::move(stop)};
    game.states.push_back(std::move(node));
  }
  for (int j = 0; j < 2; ++j) {
    GameState sink;  // opponent-side landing state paying 2/3, then dead cycle
    sink.id = j == 0 ? "pay_b" : "pay_a";
    sink.controller = 2 - j;
    GameAction only;
    only.label = "1";
    only.rewards = {Rat(0), Rat(0)};
    only.rewards[j] = Rat(2, 3);
    only.transitions = {{4 + (1 - j), Rat(1)}};
    sink.actions.push_back(std::move(only));
    game.states.push_back(std::move(sink));
  }
  for (int j = 0; j < 2; ++j) {
    GameState cyc;
    cyc.id = j == 0 ? "c1" : "c2";
    cyc.controller = j + 1;
    GameAction only;
    only.label = "1";
    only.rewards = {Rat(0), Rat(0)};
    only.transitions = {{4 + (1 - j), Rat(1)}};
    cyc.actions.push_back(std::move(only));
    game.states.push_back(std::move(cyc));
  }
  game.rebuild_index();
  return game;
}

}  // namespace

namespace {

/// A 2-player game with a 3-action state, so the solver's selection chain
/// carries an interior auxiliary variable. Strict argmaxes everywhere: the
/// unique equilibrium is pure (stop at h, middle room from a).
StochasticGame three_action_game() {
  StochasticGame game;
  game.num_players = 2;
  game.discount = Rat(1, 2);
  auto add_state = [&game](const std::string& id, int controller) -> GameState& {
    GameState state;
    state.id = id;
    state.controller = controller;
    game.states.push_back(std::move(state));
    return game.states.back();
  };
  auto action = [](const std::string& label, Rat r1, Rat r2, int next) {
    GameAction a;
    a.label = label;
    a.rewards = {std::move(r1), std::move(r2)};
    a.transitions = {{next, Rat(1)}};
    return a;
  };
  // 0: h (p2), 1: a (p1), 2..4: rooms (p2), 5: cyc1 (p1), 6: cyc2 (p2)
  GameState& h = add_state("h", 2);
  h.actions = {action("0", Rat(0), Rat(0), 1), action("1", Rat(0), Rat(1, 3), 5)};
  GameState& a = add_state("a", 1);
  a.actions = {action("x", Rat(0), Rat(0), 2), action("y", Rat(0), Rat(0), 3),
               action("z", Rat(0), Rat(0), 4)};
  add_state("r1", 2).actions = {action("1", Rat(1, 4), Rat(1, 8), 5)};
  add_state("r2", 2).actions = {action("1", Rat(3, 4), Rat(1, 4), 5)};
  add_state("r3", 2).actions = {action("1", Rat(1, 2), Rat(1, 2), 5)};
  add_state("cyc1", 1).actions = {action("1", Rat(0), Rat(0), 6)};
  add_state("cyc2", 2).actions = {action("1", Rat(0), Rat(0), 5)};
  game.rebuild_index();
  return game;
}

}  // namespace

TEST_CASE("three-action states run through the selection chain") {
  StochasticGame game = three_action_game();
  REQUIRE(validate_game(game).ok());
  Solve2pOutcome outcome = solve2p(game, SolverConfig{});
  CHECK(outcome.iteration.converged);
  REQUIRE(outcome.result.exact);
  // pure equilibrium: h stops (action "1"), a picks the middle room "y"
  CHECK(outcome.result.profile.probs[0][1] == Rat(1));
  CHECK(outcome.result.profile.probs[1][1] == Rat(1));
  // player 1's value at a is 3/8 unnormalized, and the profile re-verifies
  CHECK(outcome.result.valuation.v[0][1] == Rat(3, 8));
  CHECK(verify_epsilon_nash(game, outcome.result.profile, Rat(0)).holds);
  // correspondence_G agrees on the controller rows of the certified valuation
  Valuation<Rat> gv = correspondence_G(game, outcome.result.valuation);
  CHECK(gv.v[0][1] == outcome.result.valuation.v[0][1]);
  CHECK(gv.v[1][0] == outcome.result.valuation.v[1][0]);
}

TEST_CASE("correspondence_G fixes a pure-equilibrium valuation") {
  StochasticGame game = compiled(single_not());
  SolverConfig cfg;
  Solve2pOutcome outcome = solve2p(game, cfg);
  REQUIRE(outcome.result.exact);
  Valuation<Rat> v = outcome.result.valuation;
  Valuation<Rat> gv = correspondence_G(game, v);
  // own-player rows always reproduce the exact max of action valuations
  auto av = action_valuations(game, v);
  for (int k = 0; k < game.state_count(); ++k) {
    int c = game.states[k].controller - 1;
    Rat best = av.v[k][0][c];
    for (std::size_t a = 1; a < av.v[k].size(); ++a)
      if (av.v[k][a][c] > best) best = av.v[k][a][c];
    CHECK(gv.v[c][k] == best);
  }
}

TEST_CASE("correspondence_G on the zero valuation returns one-step rewards maxima") {
  StochasticGame game = compiled(single_not());
  auto zero = Valuation<Rat>::zero(2, game.state_count());
  Valuation<Rat> gv = correspondence_G(game, zero);
  for (int k = 0; k < game.state_count(); ++k) {
    int c = game.states[k].controller - 1;
    Rat best(0);
    for (const auto& action : game.states[k].actions)
      if (action.rewards[c] > best) best = action.rewards[c];
    CHECK(gv.v[c][k] == best);
  }
}

TEST_CASE("iterate converges immediately on an absorbing-only game") {
  StochasticGame game = absorbing_cycle();
  SolverConfig cfg;
  IterateResult result = iterate(game, cfg);
  CHECK(result.converged);
  CHECK(result.iterations == 1);
  CHECK(result.residual == Rat(0));
}

TEST_CASE("iterate reaches the strict pure equilibrium of the single NOT gadget") {
  StochasticGame game = compiled(single_not());
  SolverConfig cfg;
  IterateResult result = iterate(game, cfg);
  CHECK(result.converged);
  CHECK(result.residual <= cfg.residual_target);
  CHECK(result.iterations < 200);
}

TEST_CASE("iterate on the NOT-NOT cycle meets 1e-6 within 1e5 iterations at alpha 1/4") {
  StochasticGame game = compiled(not_not_cycle());
  SolverConfig cfg;
  cfg.residual_target = Rat(1, 1000000);
  cfg.max_iters = 100000;
  IterateResult result = iterate(game, cfg);
  CHECK(result.converged);
  CHECK(result.residual <= Rat(1, 1000000));
}

TEST_CASE("solve2p certifies the mixed NOT-NOT equilibrium exactly") {
  StochasticGame game = compiled(not_not_cycle());
  SolverConfig cfg;
  Solve2pOutcome outcome = solve2p(game, cfg);
  CHECK(outcome.iteration.converged);
  REQUIRE(outcome.result.exact);
  CHECK(outcome.result.certified_eps == Rat(0));
  // the known mixed equilibrium: both node states stop with probability 3/5
  int u = game.state_index("u");
  int v = game.state_index("v");
  CHECK(outcome.result.profile.probs[u][1] == Rat(3, 5));
  CHECK(outcome.result.profile.probs[v][1] == Rat(3, 5));
  // certificate re-verifies independently
  auto report = verify_epsilon_nash(game, outcome.result.profile, Rat(0));
  CHECK(report.holds);
  // and the profile is one-step optimal w.r.t. its induced valuation
  CHECK(one_step_optimal_check(game, outcome.result.valuation, outcome.result.profile).optimal);
}

TEST_CASE("solve2p finds the rational mixed equilibrium of the hand-built game") {
  StochasticGame game = two_state_mixed_game();
  REQUIRE(validate_game(game).ok());
  Solve2pOutcome outcome = solve2p(game, SolverConfig{});
  REQUIRE(outcome.result.exact);
  CHECK(outcome.result.profile.probs[0][1] == Rat(3, 5));
  CHECK(outcome.result.profile.probs[1][1] == Rat(3, 5));
  CHECK(outcome.result.valuation.v[0][0] == Rat(1, 3));
  CHECK(outcome.result.valuation.v[1][0] == Rat(2, 3));
}

TEST_CASE("snap_and_certify on an exact Nash valuation returns it exactly") {
  StochasticGame game = compiled(single_not());
  SolverConfig cfg;
  Solve2pOutcome first = solve2p(game, cfg);
  REQUIRE(first.result.exact);
  // feed the exact valuation back in: certification must return eps = 0
  SolveResult again = snap_and_certify(game, first.result.valuation, cfg);
  CHECK(again.exact);
  CHECK(again.certified_eps == Rat(0));
}

TEST_CASE("certified eps always re-verifies") {
  // Even from a garbage candidate valuation the certificate is honest.
  StochasticGame game = compiled(not_not_cycle());
  SolverConfig cfg;
  auto junk = Valuation<Rat>::zero(2, game.state_count());
  junk.v[0][0] = Rat(7, 13);
  junk.v[1][1] = Rat(1, 9);
  SolveResult result = snap_and_certify(game, junk, cfg);
  auto report = verify_epsilon_nash(game, result.profile, Rat(0));
  CHECK(report.max_gap == result.certified_eps);
  auto holds = verify_epsilon_nash(game, result.profile, result.certified_eps);
  CHECK(holds.holds);
}

TEST_CASE("undamped iteration reaches residual exactly 0 on the strict NOT gadget") {
  StochasticGame game = compiled(single_not());
  SolverConfig cfg;
  cfg.damping = Rat(1);  // plain value iteration: exact fixed point in finitely many steps
  IterateResult result = iterate(game, cfg);
  CHECK(result.converged);
  CHECK(result.residual == Rat(0));
}

TEST_CASE("warm start from a fixed point converges immediately") {
  StochasticGame game = compiled(single_not());
  SolverConfig cfg;
  cfg.damping = Rat(1);
  IterateResult cold = iterate(game, cfg);
  REQUIRE(cold.residual == Rat(0));
  IterateResult warm = iterate(game, cfg, &cold.valuation);
  CHECK(warm.converged);
  CHECK(warm.iterations == 1);
}

TEST_CASE("exact certificates sit inside the correspondence intervals") {
  // Existence regression: every compiled corpus game certifies exactly, the
  // controller rows of G reproduce the valuation, and the opponent rows lie
  // in [min_B, max_B] over the one-step optimal sets.
  std::vector<PureCircuitInstance> corpus = {single_not(), not_not_cycle()};
  {
    PureCircuitInstance orgate;
    orgate.nodes = {"u0", "u1", "w"};
    orgate.gates = {{GateType::OR, {"u0", "u1"}, {"w"}}};
    corpus.push_back(orgate);
    PureCircuitInstance purify;
    purify.nodes = {"u", "v0", "v1"};
    purify.gates = {{GateType::PURIFY, {"u"}, {"v0", "v1"}}};
    corpus.push_back(purify);
  }
  for (const auto& inst : corpus) {
    StochasticGame game = compiled(inst);
    Solve2pOutcome outcome = solve2p(game, SolverConfig{});
    REQUIRE(outcome.result.exact);  // rational stationary equilibrium, certified
    const Valuation<Rat>& v = outcome.result.valuation;
    auto av = action_valuations(game, v);
    for (int k = 0; k < game.state_count(); ++k) {
      const int c = game.states[k].controller - 1;
      const int o = 1 - c;
      Rat best = av.v[k][0][c];
      for (std::size_t a = 1; a < av.v[k].size(); ++a)
        if (av.v[k][a][c] > best) best = av.v[k][a][c];
      CHECK(v.v[c][k] == best);
      bool first = true;
      Rat lo(0), hi(0);
      for (std::size_t a = 0; a < av.v[k].size(); ++a) {
        if (!(av.v[k][a][c] == best)) continue;
        if (first || av.v[k][a][o] < lo) lo = av.v[k][a][o];
        if (first || av.v[k][a][o] > hi) hi = av.v[k][a][o];
        first = false;
      }
      CHECK(v.v[o][k] >= lo);
      CHECK(v.v[o][k] <= hi);
    }
    // one-step-optimal profiles fix the update operator exactly
    auto updated = updated_valuation(game, v, outcome.result.profile);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < game.state_count(); ++k) CHECK(updated.v[i][k] == v.v[i][k]);
  }
}

TEST_CASE("NOT-NOT certified eps sits below the hardness threshold") {
  StochasticGame game = compiled(not_not_cycle());
  Solve2pOutcome outcome = solve2p(game, SolverConfig{});
  CHECK((epsilon_threshold() - QuadExt(outcome.result.certified_eps)).sign() > 0);
}

TEST_CASE("best approximation under a denominator bound") {
  // convergents of pi-ish 355/113 from 3.14159265
  Rat value(314159265, 100000000);
  CHECK(best_approx_bounded_denominator(value, 10) == Rat(22, 7));
  CHECK(best_approx_bounded_denominator(value, 150) == Rat(355, 113));
  CHECK(best_approx_bounded_denominator(Rat(2, 3), 100) == Rat(2, 3));
  Rat near(666666667, 1000000000);
  CHECK(best_approx_bounded_denominator(near, 10) == Rat(2, 3));
}

TEST_CASE("hitting the iteration cap reports non-convergence with the residual") {
  StochasticGame game = compiled(not_not_cycle());
  SolverConfig cfg;
  cfg.max_iters = 3;
  IterateResult result = iterate(game, cfg);
  CHECK(!result.converged);
  CHECK(result.iterations == 3);
  CHECK(result.residual.sign() > 0);
  // certification still always produces an honest certificate
  SolveResult rescue = snap_and_certify(game, result.valuation, cfg);
  auto check = verify_epsilon_nash(game, rescue.profile, rescue.certified_eps);
  CHECK(check.holds);
}

TEST_CASE("negative approximation targets") {
  CHECK(best_approx_bounded_denominator(Rat(-314159265, 100000000), 10) == Rat(-22, 7));
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.damping = Rat(0);
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.residual_target = Rat(0);
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = SolverConfig{};
  StochasticGame game = absorbing_cycle();
  game.num_players = 3;  // break the 2-player requirement
  CHECK_THROWS_AS(iterate(game, cfg), std::invalid_argument);
}
