#include "remixlab/graph/diff.hpp"

namespace remixlab::graph {

RemixMetrics graph_diff(const VisualGraph& original, const VisualGraph& remixed) {
  RemixMetrics m;
  for (const auto& [id, n] : remixed.nodes) {
    if (original.nodes.count(id)) continue;
    ++m.extended_nodes;
    if (n.origin == Origin::RemixSuggested) ++m.suggestion_adoptions;
  }
  for (const auto& [id, e] : remixed.edges) {
    if (original.edges.count(id)) continue;
    ++m.extended_edges;
    if (e.origin == Origin::RemixSuggested) ++m.suggestion_adoptions;
  }
  return m;
}

}  // namespace remixlab::graph
