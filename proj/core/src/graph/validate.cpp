#include "remixlab/graph/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "remixlab/graph/adjacency.hpp"

namespace remixlab::graph {

std::string_view to_string(GraphViolationKind k) noexcept {
  switch (k) {
    case GraphViolationKind::CCBetweenCharacters: return "CCBetweenCharacters";
    case GraphViolationKind::DisconnectedCC: return "DisconnectedCC";
    case GraphViolationKind::OrphanBehavior: return "OrphanBehavior";
    case GraphViolationKind::UnreachableResult: return "UnreachableResult";
    case GraphViolationKind::ForbiddenEdge: return "ForbiddenEdge";
    case GraphViolationKind::DanglingEdge: return "DanglingEdge";
    case GraphViolationKind::SelfLoop: return "SelfLoop";
    case GraphViolationKind::UnknownCanvas: return "UnknownCanvas";
  }
  return "ForbiddenEdge";
}

bool is_pedagogical(GraphViolationKind k) noexcept {
  return k == GraphViolationKind::CCBetweenCharacters ||
         k == GraphViolationKind::DisconnectedCC ||
         k == GraphViolationKind::OrphanBehavior ||
         k == GraphViolationKind::UnreachableResult;
}

std::vector<GraphViolation> validate_graph(const VisualGraph& graph) {
  std::vector<GraphViolation> out;
  std::map<NodeId, std::set<NodeId>> neighbors;
  std::set<NodeId> has_incoming, performed;

  for (const auto& [id, e] : graph.edges) {
    const GraphNode* from = graph.find_node(e.from);
    const GraphNode* to = graph.find_node(e.to);
    if (!from || !to) {
      out.push_back({GraphViolationKind::DanglingEdge, id.str(),
                     "edge endpoint does not exist"});
      continue;
    }
    if (e.from == e.to) {
      out.push_back({GraphViolationKind::SelfLoop, id.str(),
                     "edge connects a node to itself"});
    } else if (!edge_allowed(from->kind, to->kind, e.relation)) {
      out.push_back({GraphViolationKind::ForbiddenEdge, id.str(),
                     std::string(to_string(from->kind)) + " cannot " +
                         std::string(to_string(e.relation)) + " a " +
                         std::string(to_string(to->kind))});
    }
    neighbors[e.from].insert(e.to);
    neighbors[e.to].insert(e.from);
    has_incoming.insert(e.to);
    if (e.relation == Relation::Performs && from->kind == NodeKind::Character) {
      performed.insert(e.to);
    }
  }

  for (const auto& [id, n] : graph.nodes) {
    if (!graph.find_canvas(n.canvas)) {
      out.push_back({GraphViolationKind::UnknownCanvas, id.str(),
                     "node sits on unknown canvas " + n.canvas.str()});
    }
    if (is_cc_node(n.kind)) {
      auto it = neighbors.find(id);
      if (it == neighbors.end()) {
        out.push_back({GraphViolationKind::DisconnectedCC, id.str(),
                       "concept node \"" + n.label + "\" is not connected"});
      } else if (std::all_of(it->second.begin(), it->second.end(),
                             [&](const NodeId& other) {
                               const GraphNode* o = graph.find_node(other);
                               return o && o->kind == NodeKind::Character;
                             })) {
        out.push_back({GraphViolationKind::CCBetweenCharacters, id.str(),
                       "concept node \"" + n.label +
                           "\" only connects characters; it should connect "
                           "what the characters do"});
      }
    } else if (n.kind == NodeKind::Behavior && !performed.count(id)) {
      out.push_back({GraphViolationKind::OrphanBehavior, id.str(),
                     "no character performs \"" + n.label + "\""});
    } else if (n.kind == NodeKind::Result && !has_incoming.count(id)) {
      out.push_back({GraphViolationKind::UnreachableResult, id.str(),
                     "nothing leads to \"" + n.label + "\""});
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const GraphViolation& a, const GraphViolation& b) {
                     return std::tie(a.kind, a.subject) < std::tie(b.kind, b.subject);
                   });
  return out;
}

}  // namespace remixlab::graph
