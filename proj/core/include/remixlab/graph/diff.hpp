#pragma once

#include <cstddef>

#include "remixlab/graph/visual_graph.hpp"

namespace remixlab::graph {

struct RemixMetrics {
  std::size_t extended_nodes = 0;
  std::size_t extended_edges = 0;
  // Extended nodes and edges whose origin is remix-suggested.
  std::size_t suggestion_adoptions = 0;

  friend bool operator==(const RemixMetrics&, const RemixMetrics&) = default;
};

// Set difference by id: what `remixed` has that `original` lacks.
RemixMetrics graph_diff(const VisualGraph& original, const VisualGraph& remixed);

}  // namespace remixlab::graph
