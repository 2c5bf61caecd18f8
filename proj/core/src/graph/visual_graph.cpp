#include "remixlab/graph/visual_graph.hpp"

#include <algorithm>

#include "remixlab/error.hpp"
#include "remixlab/graph/adjacency.hpp"

namespace remixlab::graph {

std::string_view to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Character: return "Character";
    case NodeKind::Behavior: return "Behavior";
    case NodeKind::Result: return "Result";
    case NodeKind::Condition: return "Condition";
    case NodeKind::Boolean: return "Boolean";
    case NodeKind::Loop: return "Loop";
    case NodeKind::Variable: return "Variable";
  }
  return "Character";
}

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::Performs: return "performs";
    case Relation::Produces: return "produces";
    case Relation::Guards: return "guards";
    case Relation::Repeats: return "repeats";
    case Relation::Reads: return "reads";
    case Relation::Writes: return "writes";
    case Relation::Sequence: return "sequence";
  }
  return "performs";
}

std::string_view to_string(Origin o) noexcept {
  switch (o) {
    case Origin::System: return "system";
    case Origin::Learner: return "learner";
    case Origin::RemixSuggested: return "remix-suggested";
  }
  return "learner";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) noexcept {
  for (NodeKind k : kNodeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Relation> relation_from_string(std::string_view s) noexcept {
  for (Relation r : kRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<Origin> origin_from_string(std::string_view s) noexcept {
  for (Origin o : {Origin::System, Origin::Learner, Origin::RemixSuggested}) {
    if (to_string(o) == s) return o;
  }
  return std::nullopt;
}

bool is_event_node(NodeKind k) noexcept {
  return k == NodeKind::Character || k == NodeKind::Behavior ||
         k == NodeKind::Result;
}

bool is_cc_node(NodeKind k) noexcept { return !is_event_node(k); }

EdgeId canonical_edge_id(const NodeId& from, Relation r, const NodeId& to) {
  return EdgeId(from.str() + "|" + std::string(to_string(r)) + "|" + to.str());
}

const Canvas* VisualGraph::find_canvas(const CanvasId& id) const {
  auto it = std::find_if(canvases.begin(), canvases.end(),
                         [&](const Canvas& c) { return c.id == id; });
  return it == canvases.end() ? nullptr : &*it;
}

const GraphNode* VisualGraph::find_node(const NodeId& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

const GraphEdge* VisualGraph::find_edge(const EdgeId& id) const {
  auto it = edges.find(id);
  return it == edges.end() ? nullptr : &it->second;
}

const GraphEdge* VisualGraph::find_triple(const NodeId& from, Relation r,
                                          const NodeId& to) const {
  for (const auto& [id, e] : edges) {
    if (e.from == from && e.to == to && e.relation == r) return &e;
  }
  return nullptr;
}

namespace {

struct Apply {
  VisualGraph& g;

  void operator()(const op::AddCanvas& o) const {
    if (o.canvas.id.empty()) {
      throw Error(Errc::InvalidArgument, "canvas id is empty");
    }
    if (g.find_canvas(o.canvas.id)) {
      throw Error(Errc::DuplicateId, "canvas already exists", o.canvas.id.str());
    }
    g.canvases.push_back(o.canvas);
  }

  void operator()(const op::AddNode& o) const {
    const GraphNode& n = o.node;
    if (n.id.empty()) throw Error(Errc::InvalidArgument, "node id is empty");
    if (n.label.empty()) {
      throw Error(Errc::InvalidArgument, "node label is empty", n.id.str());
    }
    if (g.nodes.count(n.id)) {
      throw Error(Errc::DuplicateId, "node already exists", n.id.str());
    }
    if (!g.find_canvas(n.canvas)) {
      throw Error(Errc::UnknownId, "unknown canvas " + n.canvas.str(),
                  n.id.str());
    }
    g.nodes.emplace(n.id, n);
  }

  void operator()(const op::AddEdge& o) const {
    const GraphNode* from = g.find_node(o.from);
    const GraphNode* to = g.find_node(o.to);
    if (!from) throw Error(Errc::UnknownId, "unknown node", o.from.str());
    if (!to) throw Error(Errc::UnknownId, "unknown node", o.to.str());
    if (o.from == o.to) {
      throw Error(Errc::KindViolation, "an edge cannot connect a node to itself",
                  o.from.str());
    }
    if (!edge_allowed(from->kind, to->kind, o.relation)) {
      throw Error(Errc::KindViolation,
                  std::string(to_string(from->kind)) + " -" +
                      std::string(to_string(o.relation)) + "-> " +
                      std::string(to_string(to->kind)) + " is not allowed");
    }
    if (g.find_triple(o.from, o.relation, o.to)) {
      throw Error(Errc::DuplicateEdge, "edge already exists",
                  canonical_edge_id(o.from, o.relation, o.to).str());
    }
    EdgeId id = canonical_edge_id(o.from, o.relation, o.to);
    if (g.edges.count(id)) {
      throw Error(Errc::DuplicateEdge, "edge id already in use", id.str());
    }
    g.edges.emplace(id, GraphEdge{id, o.from, o.to, o.relation, o.origin});
  }

  void operator()(const op::RemoveNode& o) const {
    if (!g.nodes.erase(o.id)) {
      throw Error(Errc::UnknownId, "unknown node", o.id.str());
    }
    std::erase_if(g.edges, [&](const auto& kv) {
      return kv.second.from == o.id || kv.second.to == o.id;
    });
  }

  void operator()(const op::RemoveEdge& o) const {
    if (!g.edges.erase(o.id)) {
      throw Error(Errc::UnknownId, "unknown edge", o.id.str());
    }
  }

  void operator()(const op::SetLabel& o) const {
    auto it = g.nodes.find(o.id);
    if (it == g.nodes.end()) {
      throw Error(Errc::UnknownId, "unknown node", o.id.str());
    }
    if (o.label.empty()) {
      throw Error(Errc::InvalidArgument, "node label is empty", o.id.str());
    }
    it->second.label = o.label;
  }
};

}  // namespace

VisualGraph mutate_graph(const VisualGraph& graph, const GraphOp& operation) {
  VisualGraph next = graph;
  std::visit(Apply{next}, operation);
  return next;
}

}  // namespace remixlab::graph
