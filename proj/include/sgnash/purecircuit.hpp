#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sgnash {

enum class GateType { NOT, OR, PURIFY };

std::string gate_type_name(GateType t);
std::optional<GateType> gate_type_from_name(const std::string& s);

struct Gate {
  GateType type;
  std::vector<std::string> in;   // NOT: 1, OR: 2, PURIFY: 1
  std::vector<std::string> out;  // NOT: 1, OR: 1, PURIFY: 2
};

/// A Pure-Circuit instance: nodes, gates, and an optional bipartition of the
/// interaction graph. Each node is the output of at most one gate.
struct PureCircuitInstance {
  std::vector<std::string> nodes;
  std::vector<Gate> gates;
  std::map<std::string, int> bipartition;  // node -> {1, 2}; may be empty

  int node_index(const std::string& id) const;
};

/// Checks arities, node references, output uniqueness, and (when a
/// bipartition is present) that every gate crosses sides.
std::vector<std::string> validate_instance(const PureCircuitInstance& instance);

enum class NodeValue { ZERO, ONE, BOT };

std::string node_value_name(NodeValue v);
std::optional<NodeValue> node_value_from_name(const std::string& s);

using Assignment = std::map<std::string, NodeValue>;

/// Indices of gates whose constraint the assignment violates. Implications
/// with a BOT antecedent are vacuous; PURIFY additionally demands at least
/// one pure output.
std::vector<int> check_assignment(const PureCircuitInstance& instance, const Assignment& assignment);

/// Scans {0,1,bot}^V in lexicographic order (0 < 1 < bot, nodes in listed
/// order) and returns the first satisfying assignment. The problem is total,
/// so this always succeeds within the cap.
struct CapExceeded {
  int cap;
};
std::variant<Assignment, CapExceeded> brute_force_solve(const PureCircuitInstance& instance,
                                                        int node_cap = 12);

/// BFS 2-coloring of the undirected interaction graph. On success every gate
/// crosses the returned sides; otherwise an odd cycle is the witness.
struct Bipartition {
  std::map<std::string, int> side;  // node -> {1, 2}
};
struct OddCycle {
  std::vector<std::string> cycle;
};
std::variant<Bipartition, OddCycle> check_bipartite(const PureCircuitInstance& instance);

nlohmann::json instance_to_json(const PureCircuitInstance& instance);
PureCircuitInstance instance_from_json(const nlohmann::json& j);
nlohmann::json assignment_to_json(const Assignment& assignment);
Assignment assignment_from_json(const nlohmann::json& j);

}  // namespace sgnash
