#pragma once

#include <optional>
#include <vector>

#include "remixlab/graph/visual_graph.hpp"

namespace remixlab::graph {

// Permitted wiring:
//   Character -> Behavior   performs
//   Behavior  -> Result     produces
//   Condition -> Behavior   guards
//   Condition -> Result     guards
//   Loop      -> Behavior   repeats
//   Boolean   -> Condition  reads
//   Variable  -> Condition  reads
//   Variable  -> Result     writes
//   Behavior  -> Behavior   sequence
bool edge_allowed(NodeKind from, NodeKind to, Relation r) noexcept;

// The single relation allowed between two kinds, if any.
std::optional<Relation> relation_for(NodeKind from, NodeKind to) noexcept;

struct AdjacencyRule {
  NodeKind from;
  NodeKind to;
  Relation relation;
};

const std::vector<AdjacencyRule>& adjacency_rules();

}  // namespace remixlab::graph
