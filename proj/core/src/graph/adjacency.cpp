#include "remixlab/graph/adjacency.hpp"

namespace remixlab::graph {

const std::vector<AdjacencyRule>& adjacency_rules() {
  static const std::vector<AdjacencyRule> rules{
      {NodeKind::Character, NodeKind::Behavior, Relation::Performs},
      {NodeKind::Behavior, NodeKind::Result, Relation::Produces},
      {NodeKind::Condition, NodeKind::Behavior, Relation::Guards},
      {NodeKind::Condition, NodeKind::Result, Relation::Guards},
      {NodeKind::Loop, NodeKind::Behavior, Relation::Repeats},
      {NodeKind::Boolean, NodeKind::Condition, Relation::Reads},
      {NodeKind::Variable, NodeKind::Condition, Relation::Reads},
      {NodeKind::Variable, NodeKind::Result, Relation::Writes},
      {NodeKind::Behavior, NodeKind::Behavior, Relation::Sequence},
  };
  return rules;
}

bool edge_allowed(NodeKind from, NodeKind to, Relation r) noexcept {
  for (const auto& rule : adjacency_rules()) {
    if (rule.from == from && rule.to == to && rule.relation == r) return true;
  }
  return false;
}

std::optional<Relation> relation_for(NodeKind from, NodeKind to) noexcept {
  for (const auto& rule : adjacency_rules()) {
    if (rule.from == from && rule.to == to) return rule.relation;
  }
  return std::nullopt;
}

}  // namespace remixlab::graph
