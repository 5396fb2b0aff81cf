// sgnash: exact equilibrium toolkit for discounted perfect-information
// stochastic games. Subcommands cover game evaluation and certification, the
// 2-player solver, the Pure-Circuit compiler pipeline, and the G(a)/SqrtSum
// gadget family. All outputs are deterministic JSON: sorted keys, canonical
// "num/den" rationals, decimals rendered to 12 places for reading only.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "sgnash/best_response.hpp"
#include "sgnash/evaluate.hpp"
#include "sgnash/game_io.hpp"
#include "sgnash/purecircuit.hpp"
#include "sgnash/reduction.hpp"
#include "sgnash/solver2p.hpp"
#include "sgnash/sqrtfamily.hpp"

namespace {

using nlohmann::json;
using namespace sgnash;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // negative domain outcomes (NOT_BIPARTITE, gaps > eps, ...)
constexpr int kExitUsage = 2;   // usage, parse and input-validation errors

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json rat_json(const Rat& r) { return {{"exact", r.str()}, {"decimal", r.decimal(12)}}; }

json quad_json(const QuadExt& x) {
  return {{"exact", quadext_to_json(x)}, {"display", x.str()}, {"decimal", x.decimal(12)}};
}

json valuation_json(const StochasticGame& game, const Valuation<Rat>& valuation) {
  json out = json::object();
  for (int i = 0; i < game.num_players; ++i) {
    json row = json::object();
    for (int k = 0; k < game.state_count(); ++k) row[game.states[k].id] = rat_json(valuation.v[i][k]);
    out[std::to_string(i + 1)] = row;
  }
  return out;
}

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  auto r = Rat::try_parse(text);
  if (!r) throw ParseError(flag + ": expected a rational 'num/den', got '" + text + "'");
  return *r;
}

StochasticGame load_game(const std::string& path) {
  StochasticGame game = game_from_json(parse_json_file(path));
  ValidationReport report = validate_game(game);
  if (!report.ok()) {
    std::string what = "invalid game '" + path + "':";
    for (const auto& v : report.violations) what += "\n  - " + v;
    throw ParseError(what);
  }
  return game;
}

Profile<Rat> load_profile(const StochasticGame& game, const std::string& path) {
  Profile<Rat> profile = profile_from_json(game, parse_json_file(path));
  auto issues = validate_profile(game, profile);
  if (!issues.empty()) throw ParseError("invalid profile '" + path + "': " + issues.front());
  return profile;
}

std::vector<long> parse_long_list(const std::string& text, const std::string& flag) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      long value = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw ParseError(flag + ": expected a comma-separated integer list, got '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct SolverFlags {
  std::string alpha = "1/4";
  long max_iters = 1000000;
  std::string residual = "1/1000000000";
  std::string delta = "1/1000000000";
  long denom_bound = 1000000000000L;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "damping factor in (0,1]");
    cmd->add_option("--max-iters", max_iters, "iteration cap");
    cmd->add_option("--residual-target", residual, "sup-norm residual target");
    cmd->add_option("--argmax-tol", delta, "argmax widening tolerance");
    cmd->add_option("--denom-bound", denom_bound, "denominator cap for rationalization");
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.damping = parse_rat_flag(alpha, "--alpha");
    cfg.max_iters = max_iters;
    cfg.residual_target = parse_rat_flag(residual, "--residual-target");
    cfg.argmax_tolerance = parse_rat_flag(delta, "--argmax-tol");
    cfg.rationalize_denom_bound = mpz_class(denom_bound);
    cfg.check();
    return cfg;
  }
};

json solve_result_json(const StochasticGame& game, const Solve2pOutcome& outcome) {
  return {{"converged", outcome.iteration.converged},
          {"iterations", outcome.iteration.iterations},
          {"residual", rat_json(outcome.iteration.residual)},
          {"certifiedEps", rat_json(outcome.result.certified_eps)},
          {"exact", outcome.result.exact},
          {"recoveredClosedForm", outcome.result.recovered},
          {"profile", profile_to_json(game, outcome.result.profile)},
          {"valuation", valuation_json(game, outcome.result.valuation)}};
}

json window_json(const RewardWindow& w) {
  return {{"lo", quad_json(w.lo)}, {"hi", quad_json(w.hi)}, {"chosen", w.chosen.str()}};
}

CompiledGame reconstruct_compiled(StochasticGame game, const ReductionParams& params) {
  CompiledGame compiled;
  compiled.node_state.clear();
  for (int k = 0; k < game.state_count(); ++k)
    if (!game.states[k].id.empty() && game.states[k].id[0] != '@')
      compiled.node_state[game.states[k].id] = k;
  compiled.game = std::move(game);
  compiled.params = params;
  return compiled;
}

int cmd_validate(const std::string& game_path) {
  StochasticGame game = game_from_json(parse_json_file(game_path));
  ValidationReport report = validate_game(game);
  emit({{"violations", report.violations},
        {"alternating", report.alternating},
        {"rewardsInUnitRange", report.rewards_in_unit_range}});
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_eval(const std::string& game_path, const std::string& profile_path) {
  StochasticGame game = load_game(game_path);
  Profile<Rat> profile = load_profile(game, profile_path);
  emit({{"payoffs", valuation_json(game, evaluate_payoffs(game, profile))},
        {"unnormalizedValuation", valuation_json(game, induced_valuation(game, profile))}});
  return kExitOk;
}

int cmd_best_response(const std::string& game_path, const std::string& profile_path, int player) {
  StochasticGame game = load_game(game_path);
  Profile<Rat> profile = load_profile(game, profile_path);
  if (player < 1 || player > game.num_players) throw ParseError("--player out of range");
  BestResponse<Rat> br = best_response(game, profile, player);
  json values = json::object(), policy = json::object();
  for (int k = 0; k < game.state_count(); ++k) {
    values[game.states[k].id] = rat_json(br.values[k]);
    if (br.policy[k] >= 0) policy[game.states[k].id] = game.states[k].actions[br.policy[k]].label;
  }
  emit({{"player", player}, {"values", values}, {"policy", policy}});
  return kExitOk;
}

int cmd_verify_nash(const std::string& game_path, const std::string& profile_path,
                    const std::string& eps_text) {
  StochasticGame game = load_game(game_path);
  Profile<Rat> profile = load_profile(game, profile_path);
  Rat eps = parse_rat_flag(eps_text, "--eps");
  if (eps.sign() < 0) throw ParseError("--eps must be >= 0");
  NashReport<Rat> report = verify_epsilon_nash(game, profile, eps);
  json gaps = json::object(), responses = json::object();
  for (int i = 0; i < game.num_players; ++i) {
    json row = json::object(), pol = json::object();
    for (int k = 0; k < game.state_count(); ++k) {
      row[game.states[k].id] = rat_json(report.gaps[i][k]);
      if (report.best_policies[i][k] >= 0)
        pol[game.states[k].id] = game.states[k].actions[report.best_policies[i][k]].label;
    }
    gaps[std::to_string(i + 1)] = row;
    responses[std::to_string(i + 1)] = pol;
  }
  emit({{"holds", report.holds},
        {"eps", eps.str()},
        {"maxGap", rat_json(report.max_gap)},
        {"gaps", gaps},
        {"bestResponses", responses}});
  return report.holds ? kExitOk : kExitDomain;
}

int cmd_solve2p(const std::string& game_path, const SolverFlags& flags, const std::string& out_path) {
  StochasticGame game = load_game(game_path);
  if (game.num_players != 2) throw ParseError("solve2p: the game must have exactly 2 players");
  Solve2pOutcome outcome = solve2p(game, flags.config());
  emit(solve_result_json(game, outcome));
  if (!out_path.empty())
    write_text_file(out_path, profile_to_json(game, outcome.result.profile).dump(2) + "\n");
  return kExitOk;
}

int cmd_pc_check(const std::string& circuit_path, const std::string& assignment_path) {
  PureCircuitInstance instance = instance_from_json(parse_json_file(circuit_path));
  Assignment assignment = assignment_from_json(parse_json_file(assignment_path));
  std::vector<int> violated = check_assignment(instance, assignment);
  json gates = json::array();
  for (int g : violated) {
    const Gate& gate = instance.gates[g];
    gates.push_back({{"index", g}, {"type", gate_type_name(gate.type)}, {"in", gate.in}, {"out", gate.out}});
  }
  emit({{"satisfied", violated.empty()}, {"violatedGates", gates}});
  return violated.empty() ? kExitOk : kExitDomain;
}

int cmd_pc_solve(const std::string& circuit_path, int cap) {
  PureCircuitInstance instance = instance_from_json(parse_json_file(circuit_path));
  auto solved = brute_force_solve(instance, cap);
  if (std::holds_alternative<CapExceeded>(solved)) {
    emit({{"error", "CAP_EXCEEDED"}, {"cap", std::get<CapExceeded>(solved).cap}});
    return kExitDomain;
  }
  emit({{"assignment", assignment_to_json(std::get<Assignment>(solved))}});
  return kExitOk;
}

int cmd_pc_compile(const std::string& circuit_path, const std::string& eps_text,
                   const std::string& out_path, const std::string& params_path) {
  PureCircuitInstance instance = instance_from_json(parse_json_file(circuit_path));
  Rat eps = parse_rat_flag(eps_text, "--eps");
  ReductionParams params;
  try {
    params = make_params(eps);
  } catch (const EmptyWindow& e) {
    emit({{"error", "EMPTY_WINDOW"}, {"detail", e.what()}});
    return kExitDomain;
  }
  auto compiled_or_cycle = compile_circuit(instance, params);
  if (std::holds_alternative<OddCycle>(compiled_or_cycle)) {
    emit({{"error", "NOT_BIPARTITE"}, {"oddCycle", std::get<OddCycle>(compiled_or_cycle).cycle}});
    return kExitDomain;
  }
  const CompiledGame& compiled = std::get<CompiledGame>(compiled_or_cycle);
  write_text_file(out_path, game_to_json(compiled.game).dump(2) + "\n");
  if (!params_path.empty()) write_text_file(params_path, params_to_json(params).dump(2) + "\n");
  json node_states = json::object();
  for (const auto& [node, k] : compiled.node_state) node_states[node] = compiled.game.states[k].id;
  emit({{"states", compiled.game.state_count()},
        {"nodeStates", node_states},
        {"eps", eps.str()},
        {"rewards",
         {{"NOT", params.reward_not.str()},
          {"OR", params.reward_or.str()},
          {"PURIFY0", params.reward_p0.str()},
          {"PURIFY1", params.reward_p1.str()}}}});
  return kExitOk;
}

int cmd_pc_decode(const std::string& game_path, const std::string& profile_path,
                  const std::string& params_path) {
  StochasticGame game = load_game(game_path);
  Profile<Rat> profile = load_profile(game, profile_path);
  ReductionParams params = params_from_json(parse_json_file(params_path));
  CompiledGame compiled = reconstruct_compiled(std::move(game), params);
  Assignment decoded = decode_profile(compiled, profile);
  json probs = json::object();
  for (const auto& [node, k] : compiled.node_state)
    probs[node] = rat_json(profile.probs[k][1]);
  emit({{"assignment", assignment_to_json(decoded)}, {"actionOneProbability", probs}});
  return kExitOk;
}

int cmd_windows(const std::string& eps_text) {
  Rat eps = parse_rat_flag(eps_text, "--eps");
  try {
    RewardWindows windows = compute_reward_windows(eps);
    emit({{"eps", eps.str()},
          {"NOT", window_json(windows.not_gate)},
          {"OR", window_json(windows.or_gate)},
          {"PURIFY0", window_json(windows.purify0)},
          {"PURIFY1", window_json(windows.purify1)}});
    return kExitOk;
  } catch (const EmptyWindow& e) {
    emit({{"error", "EMPTY_WINDOW"}, {"detail", e.what()}});
    return kExitDomain;
  }
}

int cmd_epsilon_bound() {
  EpsilonBoundReport report = verify_epsilon_bound();
  emit({{"check", report.ok() ? "PASS" : "FAIL"},
        {"fStar", quad_json(report.f_star)},
        {"closedForm", "(3-2*sqrt(2))/144"},
        {"closedFormMatches", report.closed_form_matches},
        {"purifyTermsEqual", report.purify_terms_equal},
        {"orTermIsMin", report.or_term_is_min},
        {"gridMax", rat_json(report.grid_max)},
        {"gridNeverExceeds", report.grid_ok},
        {"epsThreshold", quad_json(report.eps_threshold)},
        {"thresholdMatches", report.threshold_matches}});
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_ga_build(long a, const std::string& out_path) {
  GaGadget gadget = build_Ga(a);
  write_text_file(out_path, game_to_json(gadget.game).dump(2) + "\n");
  emit({{"a", a},
        {"L", gadget.L.str()},
        {"H", gadget.H.str()},
        {"xStar", quad_json(gadget.x_star)},
        {"states", gadget.game.state_count()}});
  return kExitOk;
}

int cmd_ga_solve(long a) {
  GaGadget gadget = build_Ga(a);
  EquilibriumCertificate cert = closed_form_equilibrium(gadget);
  NoPureEquilibriumReport pure = check_no_pure_equilibrium(gadget);
  emit({{"a", a},
        {"xStar", quad_json(cert.x_star)},
        {"certificate",
         {{"indifferenceHolds", cert.indifference_holds},
          {"insideUnitInterval", cert.inside_unit_interval},
          {"discriminantIs81a", cert.discriminant_is_81a},
          {"companionRoot", quad_json(cert.companion_root)},
          {"companionExceedsOne", cert.companion_exceeds_one},
          {"quadraticSignsOk", cert.quadratic_signs_ok}}},
        {"allPureProfilesRejected", pure.all_rejected}});
  return cert.ok() && pure.all_rejected ? kExitOk : kExitDomain;
}

int cmd_sqrtsum_build(const std::string& a_text, long t, const std::string& out_path) {
  SqrtSumInstance instance{parse_long_list(a_text, "--a"), t};
  try {
    SqrtSumGame built = build_sqrtsum_game(instance);
    write_text_file(out_path, game_to_json(built.game).dump(2) + "\n");
    json gadgets = json::array();
    for (const auto& g : built.gadgets)
      gadgets.push_back({{"a", g.a},
                         {"p", g.p.str()},
                         {"q", g.q.str()},
                         {"negated", g.negated},
                         {"c", g.c.str()}});
    emit({{"gadgets", gadgets},
          {"r0", rat_json(built.r0)},
          {"cOverD", rat_json(built.c_over_d)},
          {"states", built.game.state_count()}});
    return kExitOk;
  } catch (const EqualInstance&) {
    emit({{"error", "EQUAL_INSTANCE"}});
    return kExitDomain;
  }
}

int cmd_sqrtsum_decide(const std::string& a_text, long t) {
  SqrtSumInstance instance{parse_long_list(a_text, "--a"), t};
  try {
    SqrtSumDecision decision = decide_sqrtsum(instance);
    emit({{"relation", compare_result_name(decision.relation)},
          {"witnessAction", decision.witness_action},
          {"r0", rat_json(decision.r0)},
          {"cOverD", rat_json(decision.c_over_d)},
          {"intervalCrossCheck", decision.interval_cross_check}});
    return kExitOk;
  } catch (const EqualInstance&) {
    emit({{"error", "EQUAL_INSTANCE"}});
    return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact equilibria, reductions and gadget games for discounted "
               "perfect-information stochastic games"};
  app.require_subcommand(1);

  std::string game_path, profile_path, circuit_path, assignment_path, params_path, out_path;
  std::string eps_text, a_list;
  int player = 1, cap = 12;
  long a_value = 1, t_value = 0;
  SolverFlags solver_flags;

  auto* validate = app.add_subcommand("validate", "check game invariants");
  validate->add_option("--game", game_path)->required();

  auto* eval = app.add_subcommand("eval", "normalized payoffs of a profile");
  eval->add_option("--game", game_path)->required();
  eval->add_option("--profile", profile_path)->required();

  auto* br = app.add_subcommand("best-response", "exact best response of one player");
  br->add_option("--game", game_path)->required();
  br->add_option("--profile", profile_path)->required();
  br->add_option("--player", player)->required();

  auto* verify = app.add_subcommand("verify-nash", "exact epsilon-Nash certificate");
  verify->add_option("--game", game_path)->required();
  verify->add_option("--profile", profile_path)->required();
  verify->add_option("--eps", eps_text)->required();

  auto* solve = app.add_subcommand("solve2p", "2-player stationary equilibrium solver");
  solve->add_option("--game", game_path)->required();
  solve->add_option("--out", out_path, "write the certified profile here");
  solver_flags.attach(solve);

  auto* pc_check = app.add_subcommand("pc-check", "check a Pure-Circuit assignment");
  pc_check->add_option("--circuit", circuit_path)->required();
  pc_check->add_option("--assignment", assignment_path)->required();

  auto* pc_solve = app.add_subcommand("pc-solve", "brute-force a small Pure-Circuit instance");
  pc_solve->add_option("--circuit", circuit_path)->required();
  pc_solve->add_option("--cap", cap, "node cap for the scan");

  auto* pc_compile = app.add_subcommand("pc-compile", "compile a Pure-Circuit into a game");
  pc_compile->add_option("--circuit", circuit_path)->required();
  pc_compile->add_option("--eps", eps_text)->required();
  pc_compile->add_option("--out", out_path)->required();
  pc_compile->add_option("--emit-params", params_path);

  auto* pc_decode = app.add_subcommand("pc-decode", "decode a profile of a compiled game");
  pc_decode->add_option("--game", game_path)->required();
  pc_decode->add_option("--profile", profile_path)->required();
  pc_decode->add_option("--params", params_path)->required();

  auto* windows = app.add_subcommand("windows", "reward windows for a given epsilon");
  windows->add_option("--eps", eps_text)->required();

  app.add_subcommand("epsilon-bound", "verify the hardness constant derivation");

  auto* ga_build = app.add_subcommand("ga-build", "emit the 3-player gadget G(a)");
  ga_build->add_option("--a", a_value)->required();
  ga_build->add_option("--out", out_path)->required();

  auto* ga_solve = app.add_subcommand("ga-solve", "closed-form equilibrium of G(a) with certificate");
  ga_solve->add_option("--a", a_value)->required();

  auto* ss_build = app.add_subcommand("sqrtsum-build", "emit the 4-player SqrtSum game");
  ss_build->add_option("--a", a_list)->required();
  ss_build->add_option("--t", t_value)->required();
  ss_build->add_option("--out", out_path)->required();

  auto* ss_decide = app.add_subcommand("sqrtsum-decide", "decide sum of radicals vs t via the game");
  ss_decide->add_option("--a", a_list)->required();
  ss_decide->add_option("--t", t_value)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(game_path);
    if (eval->parsed()) return cmd_eval(game_path, profile_path);
    if (br->parsed()) return cmd_best_response(game_path, profile_path, player);
    if (verify->parsed()) return cmd_verify_nash(game_path, profile_path, eps_text);
    if (solve->parsed()) return cmd_solve2p(game_path, solver_flags, out_path);
    if (pc_check->parsed()) return cmd_pc_check(circuit_path, assignment_path);
    if (pc_solve->parsed()) return cmd_pc_solve(circuit_path, cap);
    if (pc_compile->parsed()) return cmd_pc_compile(circuit_path, eps_text, out_path, params_path);
    if (pc_decode->parsed()) return cmd_pc_decode(game_path, profile_path, params_path);
    if (windows->parsed()) return cmd_windows(eps_text);
    if (app.get_subcommand("epsilon-bound")->parsed()) return cmd_epsilon_bound();
    if (ga_build->parsed()) return cmd_ga_build(a_value, out_path);
    if (ga_solve->parsed()) return cmd_ga_solve(a_value);
    if (ss_build->parsed()) return cmd_sqrtsum_build(a_list, t_value, out_path);
    if (ss_decide->parsed()) return cmd_sqrtsum_decide(a_list, t_value);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
