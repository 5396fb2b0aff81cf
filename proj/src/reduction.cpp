#include "sgnash/reduction.hpp"

#include <algorithm>

#include "sgnash/evaluate.hpp"
#include "sgnash/game_io.hpp"

namespace sgnash {

namespace {

QuadExt sqrt2() { return QuadExt::sqrt_of(2); }

}  // namespace

QuadExt threshold_l() { return (QuadExt(2) - sqrt2()) / QuadExt(12); }
QuadExt threshold_r() { return (QuadExt(7) - sqrt2()) / QuadExt(6); }
QuadExt threshold_m() { return (threshold_l() + threshold_r()) / QuadExt(2); }
QuadExt epsilon_threshold() { return (QuadExt(3) - QuadExt(2) * sqrt2()) / QuadExt(288); }

namespace {

struct WindowSpec {
  const char* name;
  QuadExt lo;
  QuadExt hi;
  Rat preferred;
};

bool strictly_inside(const Rat& c, const QuadExt& lo, const QuadExt& hi) {
  return (QuadExt(c) - lo).sign() > 0 && (hi - QuadExt(c)).sign() > 0;
}

RewardWindow finish_window(const WindowSpec& spec) {
  if ((spec.hi - spec.lo).sign() <= 0) throw EmptyWindow(spec.name);
  if (strictly_inside(spec.preferred, spec.lo, spec.hi))
    return {spec.lo, spec.hi, spec.preferred};
  // Round the midpoint to the coarsest decimal grid that stays inside.
  QuadExt mid = (spec.lo + spec.hi) / QuadExt(2);
  for (int k = 0; k <= 64; ++k) {
    Rat scale = Rat::pow10(k);
    QuadExt scaled = mid * QuadExt(scale) + QuadExt(Rat(1, 2));
    Rat candidate = Rat(scaled.floor()) / scale;
    if (strictly_inside(candidate, spec.lo, spec.hi)) return {spec.lo, spec.hi, candidate};
  }
  throw std::logic_error(std::string("no decimal reward found inside the ") + spec.name + " window");
}

}  // namespace

RewardWindows compute_reward_windows(const QuadExt& eps) {
  if (eps.sign() < 0) throw std::invalid_argument("compute_reward_windows: eps must be >= 0");
  const QuadExt l = threshold_l();
  const QuadExt r = threshold_r();
  const QuadExt m = threshold_m();
  const QuadExt third{Rat(1, 3)};
  const QuadExt eps4 = QuadExt(4) * eps;
  const QuadExt one_minus_r = QuadExt(1) - r;

  RewardWindows out;
  out.not_gate = finish_window({"NOT", l + third + eps4 / one_minus_r, r - eps4 / l, Rat(2, 3)});
  out.or_gate =
      finish_window({"OR", l + third + eps4 / l, r / QuadExt(2) - eps4 / one_minus_r, Rat(43, 100)});
  out.purify0 = finish_window({"PURIFY0", m + third + eps4 / l, r - eps4 / one_minus_r, Rat(22, 25)});
  out.purify1 = finish_window({"PURIFY1", l + third + eps4 / l, m - eps4 / one_minus_r, Rat(11, 25)});
  return out;
}

RewardWindows compute_reward_windows(const Rat& eps) { return compute_reward_windows(QuadExt(eps)); }

ReductionParams make_params(const Rat& eps) {
  if ((epsilon_threshold() - QuadExt(eps)).sign() <= 0)
    throw EmptyWindow("every gate (epsilon is at or above the hardness threshold)");
  RewardWindows windows = compute_reward_windows(eps);
  ReductionParams params;
  params.l = threshold_l();
  params.r = threshold_r();
  params.m = threshold_m();
  params.eps_target = eps;
  params.reward_not = windows.not_gate.chosen;
  params.reward_or = windows.or_gate.chosen;
  params.reward_p0 = windows.purify0.chosen;
  params.reward_p1 = windows.purify1.chosen;
  return params;
}

ReductionParams default_params() { return make_params(Rat(1, 2048)); }

nlohmann::json params_to_json(const ReductionParams& params) {
  return {{"eps", params.eps_target.str()},
          {"l", quadext_to_json(params.l)},
          {"r", quadext_to_json(params.r)},
          {"m", quadext_to_json(params.m)},
          {"rewards",
           {{"NOT", params.reward_not.str()},
            {"OR", params.reward_or.str()},
            {"PURIFY0", params.reward_p0.str()},
            {"PURIFY1", params.reward_p1.str()}}}};
}

ReductionParams params_from_json(const nlohmann::json& j) {
  ReductionParams params;
  params.l = quadext_from_json(j.at("l"));
  params.r = quadext_from_json(j.at("r"));
  params.m = quadext_from_json(j.at("m"));
  params.eps_target = rat_from_json(j.at("eps"), "params.eps");
  const auto& rewards = j.at("rewards");
  params.reward_not = rat_from_json(rewards.at("NOT"), "params.rewards.NOT");
  params.reward_or = rat_from_json(rewards.at("OR"), "params.rewards.OR");
  params.reward_p0 = rat_from_json(rewards.at("PURIFY0"), "params.rewards.PURIFY0");
  params.reward_p1 = rat_from_json(rewards.at("PURIFY1"), "params.rewards.PURIFY1");
  bool ordered = params.l.sign() > 0 && (params.m - params.l).sign() > 0 &&
                 (params.r - params.m).sign() > 0 && (QuadExt(1) - params.r).sign() > 0;
  if (!ordered) throw ParseError("params: thresholds must satisfy 0 < l < m < r < 1");
  if ((epsilon_threshold() - QuadExt(params.eps_target)).sign() <= 0)
    throw ParseError("params: eps is at or above the hardness threshold");
  return params;
}

namespace {

// Objective l(1-r)/(l+1-r) * (r/4 - l/2 - 1/6), shared by the exact optimum
// check and the rational grid search.
template <class S>
S bound_objective(const S& l, const S& r) {
  S one{Rat(1)};
  S weight = l * (one - r) / (l + one - r);
  return weight * (r / S(Rat(4)) - l / S(Rat(2)) - S(Rat(1, 6)));
}

}  // namespace

EpsilonBoundReport verify_epsilon_bound() {
  EpsilonBoundReport report;
  const QuadExt l = threshold_l();
  const QuadExt r = threshold_r();
  const QuadExt m = threshold_m();

  report.f_star = bound_objective(l, r);
  report.closed_form = (QuadExt(3) - QuadExt(2) * sqrt2()) / QuadExt(144);
  report.closed_form_matches = report.f_star == report.closed_form;

  // The inner min over the three window slacks: the two PURIFY arguments
  // coincide at m = (l+r)/2 and the OR argument is the smallest.
  const QuadExt sixth{Rat(1, 6)};
  QuadExt purify_hi = r / QuadExt(2) - m / QuadExt(2) - sixth;
  QuadExt purify_lo = m / QuadExt(2) - l / QuadExt(2) - sixth;
  QuadExt or_term = r / QuadExt(4) - l / QuadExt(2) - sixth;
  report.purify_terms_equal = purify_hi == purify_lo;
  report.or_term_is_min = (purify_hi - or_term).sign() > 0 && (purify_lo - or_term).sign() > 0;

  report.grid_max = Rat(0);
  report.grid_ok = true;
  for (int li = 1; li < 200; ++li) {
    for (int ri = li + 1; ri < 200; ++ri) {
      Rat value = bound_objective(Rat(li, 200), Rat(ri, 200));
      if (value > report.grid_max) report.grid_max = value;
      if ((report.f_star - QuadExt(value)).sign() < 0) report.grid_ok = false;
    }
  }

  report.eps_threshold = report.f_star / QuadExt(2);
  report.threshold_matches = report.eps_threshold == epsilon_threshold();
  return report;
}

namespace {

struct Compiler {
  const PureCircuitInstance& instance;
  const ReductionParams& params;
  const std::map<std::string, int>& side_of;
  StochasticGame game;
  std::map<std::string, int> node_state;
  std::map<std::string, int> aux_state;  // key: e.g. "NOT@2"
  int cycle_state[3] = {0, 0, 0};        // by side 1..2

  Compiler(const PureCircuitInstance& inst, const ReductionParams& p,
           const std::map<std::string, int>& sides)
      : instance(inst), params(p), side_of(sides) {
    game.num_players = 2;
    game.discount = Rat(1, 2);
  }

  int add_state(const std::string& id, int controller) {
    GameState state;
    state.id = id;
    state.controller = controller;
    game.states.push_back(std::move(state));
    return game.state_count() - 1;
  }

  GameAction make_action(const std::string& label, int rewarded_player, const Rat& reward,
                         std::vector<std::pair<int, Rat>> moves) {
    GameAction action;
    action.label = label;
    action.rewards.assign(2, Rat(0));
    if (rewarded_player != 0) action.rewards[rewarded_player - 1] = reward;
    action.transitions = std::move(moves);
    return action;
  }

  int cycle(int side) { return cycle_state[side]; }

  int aux(GateType type, int output_index, int side) {
    std::string key;
    Rat reward;
    switch (type) {
      case GateType::NOT:
        key = "NOT";
        reward = params.reward_not;
        break;
      case GateType::OR:
        key = "OR";
        reward = params.reward_or;
        break;
      case GateType::PURIFY:
        key = output_index == 0 ? "P0" : "P1";
        reward = output_index == 0 ? params.reward_p0 : params.reward_p1;
        break;
    }
    key += "@" + std::to_string(side);
    auto it = aux_state.find(key);
    if (it != aux_state.end()) return it->second;
    int idx = add_state("@aux" + key, side);
    // Single trivial action; the controller's opponent collects the window
    // reward, then play drains into the absorbing cycle.
    game.states[idx].actions.push_back(
        make_action("1", 3 - side, reward, {{cycle(3 - side), Rat(1)}}));
    aux_state[key] = idx;
    return idx;
  }

  void build() {
    for (const auto& node : instance.nodes)
      node_state[node] = add_state(node, side_of.at(node));
    for (int side = 1; side <= 2; ++side) cycle_state[side] = add_state("@cycle" + std::to_string(side), side);
    for (int side = 1; side <= 2; ++side)
      game.states[cycle(side)].actions.push_back(
          make_action("1", 0, Rat(0), {{cycle(3 - side), Rat(1)}}));

    // Output-node wiring per defining gate.
    std::map<std::string, std::pair<const Gate*, int>> defined_by;
    for (const Gate& gate : instance.gates)
      for (std::size_t o = 0; o < gate.out.size(); ++o)
        defined_by[gate.out[o]] = {&gate, static_cast<int>(o)};

    for (const auto& node : instance.nodes) {
      int k = node_state[node];
      int side = side_of.at(node);
      int opponent = 3 - side;
      auto it = defined_by.find(node);
      std::vector<std::pair<int, Rat>> move0, move1;
      if (it == defined_by.end()) {
        // Input node: both actions drain into the cycle, only the read
        // reward on action 1 matters.
        move0 = {{cycle(opponent), Rat(1)}};
        move1 = {{cycle(opponent), Rat(1)}};
      } else {
        const Gate& gate = *it->second.first;
        int output_index = it->second.second;
        switch (gate.type) {
          case GateType::NOT:
            move0 = {{node_state.at(gate.in[0]), Rat(1)}};
            move1 = {{aux(GateType::NOT, 0, opponent), Rat(1)}};
            break;
          case GateType::OR: {
            move0 = {{aux(GateType::OR, 0, opponent), Rat(1)}};
            int u0 = node_state.at(gate.in[0]);
            int u1 = node_state.at(gate.in[1]);
            if (u0 == u1) {
              move1 = {{u0, Rat(1)}};
            } else {
              move1 = {{u0, Rat(1, 2)}, {u1, Rat(1, 2)}};
              std::sort(move1.begin(), move1.end());
            }
            break;
          }
          case GateType::PURIFY:
            move0 = {{aux(GateType::PURIFY, output_index, opponent), Rat(1)}};
            move1 = {{node_state.at(gate.in[0]), Rat(1)}};
            break;
        }
      }
      game.states[k].actions.push_back(make_action("0", 0, Rat(0), std::move(move0)));
      game.states[k].actions.push_back(make_action("1", opponent, Rat(1), std::move(move1)));
    }
    game.rebuild_index();
  }
};

}  // namespace

std::variant<CompiledGame, OddCycle> compile_circuit(const PureCircuitInstance& instance,
                                                     const ReductionParams& params) {
  auto issues = validate_instance(instance);
  if (!issues.empty()) throw std::invalid_argument("compile_circuit: " + issues.front());
  for (const auto& node : instance.nodes)
    if (!node.empty() && node[0] == '@')
      throw std::invalid_argument("compile_circuit: node ids must not start with '@'");

  std::map<std::string, int> sides = instance.bipartition;
  if (sides.empty()) {
    auto colored = check_bipartite(instance);
    if (std::holds_alternative<OddCycle>(colored)) return std::get<OddCycle>(colored);
    sides = std::get<Bipartition>(colored).side;
  }

  Compiler compiler(instance, params, sides);
  compiler.build();
  CompiledGame out;
  out.game = std::move(compiler.game);
  out.node_state = std::move(compiler.node_state);
  out.params = params;
  return out;
}

Assignment decode_profile(const CompiledGame& compiled, const Profile<Rat>& profile) {
  Assignment out;
  for (const auto& [node, k] : compiled.node_state) {
    const Rat& p = profile.probs.at(k).at(1);  // action "1"
    if ((compiled.params.l - QuadExt(p)).sign() >= 0) {
      out[node] = NodeValue::ZERO;
    } else if ((QuadExt(p) - compiled.params.r).sign() >= 0) {
      out[node] = NodeValue::ONE;
    } else {
      out[node] = NodeValue::BOT;
    }
  }
  return out;
}

SoundnessReport soundness_check(const PureCircuitInstance& instance, const ReductionParams& params,
                                const SolverConfig& solver_cfg) {
  auto compiled_or_cycle = compile_circuit(instance, params);
  if (std::holds_alternative<OddCycle>(compiled_or_cycle))
    throw std::invalid_argument("soundness_check: instance is not bipartite");
  const CompiledGame& compiled = std::get<CompiledGame>(compiled_or_cycle);

  Solve2pOutcome outcome = solve2p(compiled.game, solver_cfg);

  SoundnessReport report;
  report.converged = outcome.iteration.converged;
  report.iterations = outcome.iteration.iterations;
  report.residual = outcome.iteration.residual;
  report.certified_eps = outcome.result.certified_eps;
  report.eps_within_target = !(report.certified_eps > params.eps_target);
  report.solver_exact = outcome.result.exact;
  report.decoded = decode_profile(compiled, outcome.result.profile);
  report.violated_gates = check_assignment(instance, report.decoded);
  for (const auto& [node, k] : compiled.node_state) {
    Rat p = outcome.result.profile.probs[k][1];
    report.node_probs[node] = p;
    QuadExt to_l = (QuadExt(p) - params.l).abs();
    QuadExt to_r = (QuadExt(p) - params.r).abs();
    report.node_margins[node] = (to_l - to_r).sign() <= 0 ? to_l : to_r;
  }
  report.ok = report.eps_within_target && report.violated_gates.empty();
  return report;
}

}  // namespace sgnash
