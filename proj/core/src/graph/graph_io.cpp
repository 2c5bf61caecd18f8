#include "remixlab/graph/graph_io.hpp"

#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"

namespace remixlab::graph {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& message, const std::string& where) {
  throw Error(Errc::MalformedGraphDocument, message, where);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing key '") + key + "'", path);
  return *it;
}

std::string string_member(const json& obj, const char* key,
                          const std::string& path, bool allow_empty = false) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) malformed("expected a string", path + "/" + key);
  std::string s = v.get<std::string>();
  if (s.empty() && !allow_empty) malformed("must not be empty", path + "/" + key);
  return s;
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed("expected a string", path + "/" + key);
  return it->get<std::string>();
}

const json& array_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_array()) malformed("expected an array", path + "/" + key);
  return v;
}

}  // namespace

json graph_to_json(const VisualGraph& graph) {
  json canvases = json::array();
  for (const auto& c : graph.canvases) {
    canvases.push_back({{"id", c.id.str()}, {"title", c.title}, {"note", c.note}});
  }
  json nodes = json::array();
  for (const auto& [id, n] : graph.nodes) {
    json j{{"id", id.str()},
           {"kind", std::string(to_string(n.kind))},
           {"label", n.label},
           {"origin", std::string(to_string(n.origin))},
           {"canvas", n.canvas.str()}};
    if (n.description) j["description"] = *n.description;
    if (n.image_ref) j["image_ref"] = *n.image_ref;
    nodes.push_back(std::move(j));
  }
  json edges = json::array();
  for (const auto& [id, e] : graph.edges) {
    edges.push_back({{"id", id.str()},
                     {"from", e.from.str()},
                     {"to", e.to.str()},
                     {"relation", std::string(to_string(e.relation))},
                     {"origin", std::string(to_string(e.origin))}});
  }
  return {{"format", "remixlab.graph"},
          {"version", 1},
          {"canvases", std::move(canvases)},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

std::string serialize_graph(const VisualGraph& graph) {
  return graph_to_json(graph).dump(2) + "\n";
}

VisualGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) malformed("graph document must be an object", "");
  if (string_member(doc, "format", "") != "remixlab.graph") {
    malformed("not a remixlab.graph document", "/format");
  }
  const json& version = member(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    malformed("unsupported version", "/version");
  }

  VisualGraph g;
  const json& canvases = array_member(doc, "canvases", "");
  for (std::size_t i = 0; i < canvases.size(); ++i) {
    std::string path = "/canvases/" + std::to_string(i);
    const json& c = canvases[i];
    if (!c.is_object()) malformed("expected an object", path);
    Canvas canvas{CanvasId(string_member(c, "id", path)),
                  optional_string(c, "title", path).value_or(""),
                  optional_string(c, "note", path).value_or("")};
    if (g.find_canvas(canvas.id)) malformed("duplicate canvas id", path + "/id");
    g.canvases.push_back(std::move(canvas));
  }

  const json& nodes = array_member(doc, "nodes", "");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string path = "/nodes/" + std::to_string(i);
    const json& n = nodes[i];
    if (!n.is_object()) malformed("expected an object", path);
    GraphNode node;
    node.id = NodeId(string_member(n, "id", path));
    std::string kind = string_member(n, "kind", path);
    auto k = node_kind_from_string(kind);
    if (!k) malformed("unknown node kind '" + kind + "'", path + "/kind");
    node.kind = *k;
    node.label = string_member(n, "label", path);
    node.description = optional_string(n, "description", path);
    node.image_ref = optional_string(n, "image_ref", path);
    std::string origin = optional_string(n, "origin", path).value_or("learner");
    auto o = origin_from_string(origin);
    if (!o) malformed("unknown origin '" + origin + "'", path + "/origin");
    node.origin = *o;
    node.canvas = CanvasId(string_member(n, "canvas", path));
    if (!g.find_canvas(node.canvas)) {
      malformed("unknown canvas '" + node.canvas.str() + "'", path + "/canvas");
    }
    if (g.nodes.count(node.id)) malformed("duplicate node id", path + "/id");
    g.nodes.emplace(node.id, std::move(node));
  }

  const json& edges = array_member(doc, "edges", "");
  std::set<std::tuple<NodeId, Relation, NodeId>> triples;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string path = "/edges/" + std::to_string(i);
    const json& e = edges[i];
    if (!e.is_object()) malformed("expected an object", path);
    GraphEdge edge;
    edge.from = NodeId(string_member(e, "from", path));
    edge.to = NodeId(string_member(e, "to", path));
    std::string rel = string_member(e, "relation", path);
    auto r = relation_from_string(rel);
    if (!r) malformed("unknown relation '" + rel + "'", path + "/relation");
    edge.relation = *r;
    auto id = optional_string(e, "id", path);
    edge.id = id && !id->empty() ? EdgeId(*id)
                                 : canonical_edge_id(edge.from, edge.relation, edge.to);
    std::string origin = optional_string(e, "origin", path).value_or("learner");
    auto o = origin_from_string(origin);
    if (!o) malformed("unknown origin '" + origin + "'", path + "/origin");
    edge.origin = *o;
    if (!g.nodes.count(edge.from)) malformed("unknown node", path + "/from");
    if (!g.nodes.count(edge.to)) malformed("unknown node", path + "/to");
    if (edge.from == edge.to) malformed("self-loop", path);
    if (!triples.emplace(edge.from, edge.relation, edge.to).second) {
      malformed("duplicate edge", path);
    }
    if (g.edges.count(edge.id)) malformed("duplicate edge id", path + "/id");
    g.edges.emplace(edge.id, std::move(edge));
  }
  return g;
}

VisualGraph deserialize_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    malformed(e.what(), "byte " + std::to_string(e.byte));
  }
  return graph_from_json(doc);
}

json violations_to_json(const std::vector<GraphViolation>& v) {
  json out = json::array();
  for (const auto& x : v) {
    out.push_back({{"kind", std::string(to_string(x.kind))},
                   {"subject", x.subject},
                   {"message", x.message}});
  }
  return out;
}

}  // namespace remixlab::graph
