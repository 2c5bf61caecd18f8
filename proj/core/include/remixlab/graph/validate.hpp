#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "remixlab/graph/visual_graph.hpp"

namespace remixlab::graph {

enum class GraphViolationKind {
  // Pedagogical rules.
  CCBetweenCharacters,
  DisconnectedCC,
  OrphanBehavior,
  UnreachableResult,
  // Structural rules; only reachable for graphs built outside mutate_graph.
  ForbiddenEdge,
  DanglingEdge,
  SelfLoop,
  UnknownCanvas,
};

std::string_view to_string(GraphViolationKind k) noexcept;
bool is_pedagogical(GraphViolationKind k) noexcept;

struct GraphViolation {
  GraphViolationKind kind;
  // Node id for node rules, edge id for edge rules.
  std::string subject;
  std::string message;

  friend bool operator==(const GraphViolation&, const GraphViolation&) = default;
};

/// CCBetweenCharacters: a CC node whose neighbors are all Characters.
/// DisconnectedCC: a CC node with no edges. OrphanBehavior: a Behavior
/// with no incoming performs edge. UnreachableResult: a Result with no
/// incoming edge. Ordered by (kind, subject).
std::vector<GraphViolation> validate_graph(const VisualGraph& graph);

}  // namespace remixlab::graph
