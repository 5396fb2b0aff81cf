#include "sgnash/game_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sgnash {

using nlohmann::json;

Rat rat_from_json(const json& j, const std::string& context) {
  if (!j.is_string()) throw ParseError(context + ": expected a \"num/den\" string");
  auto parsed = Rat::try_parse(j.get<std::string>());
  if (!parsed) throw ParseError(context + ": malformed rational '" + j.get<std::string>() + "'");
  return *parsed;
}

json game_to_json(const StochasticGame& game) {
  json states = json::array();
  for (const auto& state : game.states) {
    json actions = json::array();
    for (const auto& action : state.actions) {
      json rewards = json::array();
      for (const auto& r : action.rewards) rewards.push_back(r.str());
      json transitions = json::object();
      for (const auto& [next, prob] : action.transitions)
        transitions[game.states[next].id] = prob.str();
      actions.push_back({{"label", action.label}, {"rewards", rewards}, {"transitions", transitions}});
    }
    states.push_back({{"id", state.id}, {"controller", state.controller}, {"actions", actions}});
  }
  return {{"players", game.num_players}, {"gamma", game.discount.str()}, {"states", states}};
}

StochasticGame game_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("game: expected a JSON object");
  StochasticGame game;
  if (!j.contains("players") || !j["players"].is_number_integer())
    throw ParseError("game.players: expected an integer");
  game.num_players = j["players"].get<int>();
  if (!j.contains("gamma")) throw ParseError("game.gamma: missing");
  game.discount = rat_from_json(j["gamma"], "game.gamma");
  if (!j.contains("states") || !j["states"].is_array())
    throw ParseError("game.states: expected an array");

  // First pass: ids, so transitions can reference forward states.
  for (const auto& js : j["states"]) {
    GameState state;
    if (!js.contains("id") || !js["id"].is_string()) throw ParseError("state.id: expected a string");
    state.id = js["id"].get<std::string>();
    game.states.push_back(std::move(state));
  }
  game.rebuild_index();

  int k = 0;
  for (const auto& js : j["states"]) {
    GameState& state = game.states[k++];
    const std::string where = "state '" + state.id + "'";
    if (!js.contains("controller") || !js["controller"].is_number_integer())
      throw ParseError(where + ".controller: expected an integer");
    state.controller = js["controller"].get<int>();
    if (!js.contains("actions") || !js["actions"].is_array())
      throw ParseError(where + ".actions: expected an array");
    for (const auto& ja : js["actions"]) {
      GameAction action;
      if (!ja.contains("label") || !ja["label"].is_string())
        throw ParseError(where + " action.label: expected a string");
      action.label = ja["label"].get<std::string>();
      if (!ja.contains("rewards") || !ja["rewards"].is_array())
        throw ParseError(where + " action '" + action.label + "'.rewards: expected an array");
      for (const auto& jr : ja["rewards"])
        action.rewards.push_back(rat_from_json(jr, where + " action '" + action.label + "' reward"));
      if (!ja.contains("transitions") || !ja["transitions"].is_object())
        throw ParseError(where + " action '" + action.label + "'.transitions: expected an object");
      for (const auto& [target, jprob] : ja["transitions"].items()) {
        int next;
        try {
          next = game.state_index(target);
        } catch (const std::out_of_range&) {
          throw ParseError(where + " action '" + action.label + "': unknown transition target '" +
                           target + "'");
        }
        action.transitions.emplace_back(
            next, rat_from_json(jprob, where + " action '" + action.label + "' transition"));
      }
      std::sort(action.transitions.begin(), action.transitions.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      state.actions.push_back(std::move(action));
    }
  }
  return game;
}

json profile_to_json(const StochasticGame& game, const Profile<Rat>& profile) {
  json out = json::object();
  for (int k = 0; k < game.state_count(); ++k) {
    json row = json::object();
    for (std::size_t a = 0; a < game.states[k].actions.size(); ++a)
      row[game.states[k].actions[a].label] = profile.probs[k][a].str();
    out[game.states[k].id] = row;
  }
  return out;
}

Profile<Rat> profile_from_json(const StochasticGame& game, const json& j) {
  if (!j.is_object()) throw ParseError("profile: expected a JSON object");
  Profile<Rat> out;
  out.probs.resize(game.state_count());
  for (int k = 0; k < game.state_count(); ++k) {
    const auto& state = game.states[k];
    if (!j.contains(state.id)) throw ParseError("profile: missing state '" + state.id + "'");
    const json& row = j[state.id];
    out.probs[k].assign(state.actions.size(), Rat(0));
    for (std::size_t a = 0; a < state.actions.size(); ++a) {
      const std::string& label = state.actions[a].label;
      if (!row.contains(label))
        throw ParseError("profile state '" + state.id + "': missing action '" + label + "'");
      out.probs[k][a] = rat_from_json(row[label], "profile state '" + state.id + "'");
    }
  }
  return out;
}

json quadext_to_json(const QuadExt& x) {
  long a = x.radicand() == 0 ? 1 : x.radicand();
  return {{"a", a}, {"p", x.rational_part().str()}, {"q", x.radical_part().str()}};
}

QuadExt quadext_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("p") || !j.contains("q"))
    throw ParseError("quadext: expected {\"a\", \"p\", \"q\"}");
  long a = j["a"].get<long>();
  return QuadExt(a, rat_from_json(j["p"], "quadext.p"), rat_from_json(j["q"], "quadext.q"));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error in '") + path + "': " + e.what());
  }
}

}  // namespace sgnash
