#include "sgnash/purecircuit.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "sgnash/game_io.hpp"

namespace sgnash {

using nlohmann::json;

std::string gate_type_name(GateType t) {
  switch (t) {
    case GateType::NOT: return "NOT";
    case GateType::OR: return "OR";
    case GateType::PURIFY: return "PURIFY";
  }
  return "?";
}

std::optional<GateType> gate_type_from_name(const std::string& s) {
  if (s == "NOT") return GateType::NOT;
  if (s == "OR") return GateType::OR;
  if (s == "PURIFY") return GateType::PURIFY;
  return std::nullopt;
}

std::string node_value_name(NodeValue v) {
  switch (v) {
    case NodeValue::ZERO: return "0";
    case NodeValue::ONE: return "1";
    case NodeValue::BOT: return "bot";
  }
  return "?";
}

std::optional<NodeValue> node_value_from_name(const std::string& s) {
  if (s == "0") return NodeValue::ZERO;
  if (s == "1") return NodeValue::ONE;
  if (s == "bot" || s == "⊥") return NodeValue::BOT;
  return std::nullopt;
}

int PureCircuitInstance::node_index(const std::string& id) const {
  auto it = std::find(nodes.begin(), nodes.end(), id);
  if (it == nodes.end()) throw std::out_of_range("unknown node '" + id + "'");
  return static_cast<int>(it - nodes.begin());
}

std::vector<std::string> validate_instance(const PureCircuitInstance& instance) {
  std::vector<std::string> issues;
  std::set<std::string> known(instance.nodes.begin(), instance.nodes.end());
  if (known.size() != instance.nodes.size()) issues.push_back("duplicate node ids");
  std::set<std::string> outputs;
  for (std::size_t g = 0; g < instance.gates.size(); ++g) {
    const Gate& gate = instance.gates[g];
    const std::string where = "gate #" + std::to_string(g) + " (" + gate_type_name(gate.type) + ")";
    std::size_t want_in = gate.type == GateType::OR ? 2 : 1;
    std::size_t want_out = gate.type == GateType::PURIFY ? 2 : 1;
    if (gate.in.size() != want_in) issues.push_back(where + ": wrong input arity");
    if (gate.out.size() != want_out) issues.push_back(where + ": wrong output arity");
    for (const auto& v : gate.in)
      if (!known.count(v)) issues.push_back(where + ": unknown input node '" + v + "'");
    for (const auto& v : gate.out) {
      if (!known.count(v)) issues.push_back(where + ": unknown output node '" + v + "'");
      if (!outputs.insert(v).second)
        issues.push_back("node '" + v + "' is the output of more than one gate");
    }
  }
  if (!instance.bipartition.empty()) {
    for (const auto& v : instance.nodes)
      if (!instance.bipartition.count(v))
        issues.push_back("bipartition missing node '" + v + "'");
    for (const auto& [v, side] : instance.bipartition)
      if (side != 1 && side != 2)
        issues.push_back("bipartition side of '" + v + "' must be 1 or 2");
    for (const Gate& gate : instance.gates)
      for (const auto& u : gate.in)
        for (const auto& w : gate.out) {
          auto iu = instance.bipartition.find(u);
          auto iw = instance.bipartition.find(w);
          if (iu != instance.bipartition.end() && iw != instance.bipartition.end() &&
              iu->second == iw->second)
            issues.push_back("gate from '" + u + "' to '" + w + "' does not cross the bipartition");
        }
  }
  return issues;
}

namespace {

bool is_pure(NodeValue v) { return v != NodeValue::BOT; }

bool gate_satisfied(const Gate& gate, const Assignment& x) {
  auto val = [&](const std::string& id) { return x.at(id); };
  switch (gate.type) {
    case GateType::NOT: {
      NodeValue u = val(gate.in[0]), v = val(gate.out[0]);
      if (u == NodeValue::ZERO && v != NodeValue::ONE) return false;
      if (u == NodeValue::ONE && v != NodeValue::ZERO) return false;
      return true;
    }
    case GateType::OR: {
      NodeValue u = val(gate.in[0]), v = val(gate.in[1]), w = val(gate.out[0]);
      if (u == NodeValue::ZERO && v == NodeValue::ZERO && w != NodeValue::ZERO) return false;
      if ((u == NodeValue::ONE || v == NodeValue::ONE) && w != NodeValue::ONE) return false;
      return true;
    }
    case GateType::PURIFY: {
      NodeValue u = val(gate.in[0]), v = val(gate.out[0]), w = val(gate.out[1]);
      if (!is_pure(v) && !is_pure(w)) return false;
      if (is_pure(u) && (v != u || w != u)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> check_assignment(const PureCircuitInstance& instance, const Assignment& assignment) {
  for (const auto& node : instance.nodes)
    if (!assignment.count(node))
      throw std::invalid_argument("assignment is not total: missing node '" + node + "'");
  std::vector<int> violated;
  for (std::size_t g = 0; g < instance.gates.size(); ++g)
    if (!gate_satisfied(instance.gates[g], assignment)) violated.push_back(static_cast<int>(g));
  return violated;
}

std::variant<Assignment, CapExceeded> brute_force_solve(const PureCircuitInstance& instance,
                                                        int node_cap) {
  const int n = static_cast<int>(instance.nodes.size());
  if (n > node_cap) return CapExceeded{node_cap};
  static const NodeValue kOrder[3] = {NodeValue::ZERO, NodeValue::ONE, NodeValue::BOT};
  std::vector<int> digits(n, 0);
  for (;;) {
    Assignment x;
    for (int i = 0; i < n; ++i) x[instance.nodes[i]] = kOrder[digits[i]];
    if (check_assignment(instance, x).empty()) return x;
    int i = n - 1;
    while (i >= 0 && digits[i] == 2) digits[i--] = 0;
    if (i < 0) break;  // unreachable: the problem is total
    ++digits[i];
  }
  throw std::logic_error("brute_force_solve: no satisfying assignment (instance is inconsistent)");
}

std::variant<Bipartition, OddCycle> check_bipartite(const PureCircuitInstance& instance) {
  const int n = static_cast<int>(instance.nodes.size());
  std::vector<std::vector<int>> adjacency(n);
  for (const Gate& gate : instance.gates)
    for (const auto& u : gate.in)
      for (const auto& w : gate.out) {
        int iu = instance.node_index(u);
        int iw = instance.node_index(w);
        adjacency[iu].push_back(iw);
        adjacency[iw].push_back(iu);
      }

  std::vector<int> color(n, 0);
  std::vector<int> parent(n, -1);
  for (int start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    color[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : adjacency[u]) {
        if (color[w] == 0) {
          color[w] = 3 - color[u];
          parent[w] = u;
          queue.push_back(w);
        } else if (color[w] == color[u]) {
          // Odd cycle: climb both BFS branches to the common ancestor.
          std::vector<int> path_u{u}, path_w{w};
          std::set<int> seen(path_u.begin(), path_u.end());
          for (int t = parent[u]; t != -1; t = parent[t]) {
            path_u.push_back(t);
            seen.insert(t);
          }
          int meet = w;
          while (!seen.count(meet)) {
            meet = parent[meet];
            path_w.push_back(meet);
          }
          OddCycle witness;
          for (int t : path_u) {
            witness.cycle.push_back(instance.nodes[t]);
            if (t == meet) break;
          }
          for (auto it = path_w.rbegin(); it != path_w.rend(); ++it)
            if (*it != meet) witness.cycle.push_back(instance.nodes[*it]);
          return witness;
        }
      }
    }
  }
  Bipartition result;
  for (int i = 0; i < n; ++i) result.side[instance.nodes[i]] = color[i];
  return result;
}

json instance_to_json(const PureCircuitInstance& instance) {
  json gates = json::array();
  for (const Gate& gate : instance.gates)
    gates.push_back({{"type", gate_type_name(gate.type)}, {"in", gate.in}, {"out", gate.out}});
  json out = {{"nodes", instance.nodes}, {"gates", gates}};
  if (!instance.bipartition.empty()) {
    json sides = json::object();
    for (const auto& [node, side] : instance.bipartition) sides[node] = side;
    out["bipartition"] = sides;
  }
  return out;
}

PureCircuitInstance instance_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("gates"))
    throw ParseError("circuit: expected {\"nodes\", \"gates\"}");
  PureCircuitInstance instance;
  for (const auto& jn : j["nodes"]) {
    if (!jn.is_string()) throw ParseError("circuit.nodes: expected strings");
    instance.nodes.push_back(jn.get<std::string>());
  }
  for (const auto& jg : j["gates"]) {
    Gate gate;
    auto type = jg.contains("type") && jg["type"].is_string()
                    ? gate_type_from_name(jg["type"].get<std::string>())
                    : std::nullopt;
    if (!type) throw ParseError("circuit gate: type must be NOT, OR or PURIFY");
    gate.type = *type;
    for (const auto& v : jg.value("in", json::array())) gate.in.push_back(v.get<std::string>());
    for (const auto& v : jg.value("out", json::array())) gate.out.push_back(v.get<std::string>());
    instance.gates.push_back(std::move(gate));
  }
  if (j.contains("bipartition"))
    for (const auto& [node, side] : j["bipartition"].items())
      instance.bipartition[node] = side.get<int>();
  auto issues = validate_instance(instance);
  if (!issues.empty()) throw ParseError("circuit: " + issues.front());
  return instance;
}

json assignment_to_json(const Assignment& assignment) {
  json out = json::object();
  for (const auto& [node, value] : assignment) out[node] = node_value_name(value);
  return out;
}

Assignment assignment_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("assignment: expected a JSON object");
  Assignment out;
  for (const auto& [node, jv] : j.items()) {
    auto value = jv.is_string() ? node_value_from_name(jv.get<std::string>()) : std::nullopt;
    if (!value) throw ParseError("assignment['" + node + "']: expected \"0\", \"1\" or \"bot\"");
    out[node] = *value;
  }
  return out;
}

}  // namespace sgnash
