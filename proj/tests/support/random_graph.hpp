#pragma once

#include <random>
#include <string>

#include "remixlab/graph/adjacency.hpp"
#include "remixlab/graph/visual_graph.hpp"

namespace remixlab::testing {

// Random graph built only through mutate_graph, so it satisfies every
// construction invariant. Labels and descriptions include non-ASCII and
// JSON-special characters to stress serialization.
inline graph::VisualGraph random_graph(std::mt19937_64& rng, int node_count) {
  using namespace graph;
  VisualGraph g;
  int canvases = 1 + static_cast<int>(rng() % 3);
  for (int c = 0; c < canvases; ++c) {
    g = mutate_graph(g, op::AddCanvas{{CanvasId("c" + std::to_string(c)),
                                       "event " + std::to_string(c),
                                       c % 2 ? "note \"quoted\"" : ""}});
  }
  const char* labels[] = {"kick", "score +1", "Ball \xC3\xA9nergie", "x < -210",
                          "line\nbreak", "tab\there"};
  const Origin origins[] = {Origin::System, Origin::Learner, Origin::RemixSuggested};
  for (int i = 0; i < node_count; ++i) {
    GraphNode n;
    n.id = NodeId("n" + std::to_string(i));
    n.kind = kNodeKinds[rng() % 7];
    n.label = std::string(labels[rng() % 6]) + " " + std::to_string(i);
    if (rng() % 3 == 0) n.description = "desc " + std::to_string(rng() % 100);
    if (rng() % 4 == 0) n.image_ref = "assets/ab/" + std::to_string(rng() % 1000) + ".png";
    n.origin = origins[rng() % 3];
    n.canvas = CanvasId("c" + std::to_string(rng() % canvases));
    g = mutate_graph(g, op::AddNode{n});
  }
  int attempts = node_count * 3;
  for (int i = 0; i < attempts && node_count > 1; ++i) {
    NodeId a("n" + std::to_string(rng() % node_count));
    NodeId b("n" + std::to_string(rng() % node_count));
    if (a == b) continue;
    auto rel = relation_for(g.nodes.at(a).kind, g.nodes.at(b).kind);
    if (!rel || g.find_triple(a, *rel, b)) continue;
    g = mutate_graph(g, op::AddEdge{a, b, *rel, origins[rng() % 3]});
  }
  return g;
}

}  // namespace remixlab::testing
