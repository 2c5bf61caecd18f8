#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "remixlab/graph/validate.hpp"
#include "remixlab/graph/visual_graph.hpp"

namespace remixlab::graph {

// Canonical JSON document (sorted keys, nodes and edges sorted by id,
// canvases in graph order). See docs/formats.md.
std::string serialize_graph(const VisualGraph& graph);
nlohmann::json graph_to_json(const VisualGraph& graph);

/// Structural checks only: kinds, ids, canvases, endpoints, self-loops and
/// duplicate triples. Adjacency is left to validate_graph so learner
/// drafts with forbidden wiring can still be loaded and reported.
/// Errors: MalformedGraphDocument, location is a JSON pointer or "byte N".
VisualGraph deserialize_graph(std::string_view text);
VisualGraph graph_from_json(const nlohmann::json& doc);

nlohmann::json violations_to_json(const std::vector<GraphViolation>& v);

}  // namespace remixlab::graph
