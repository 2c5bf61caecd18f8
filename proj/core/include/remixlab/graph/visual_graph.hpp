#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "remixlab/ids.hpp"

namespace remixlab::graph {

enum class NodeKind {
  Character,
  Behavior,
  Result,
  Condition,
  Boolean,
  Loop,
  Variable,
};

inline constexpr NodeKind kNodeKinds[] = {
    NodeKind::Character, NodeKind::Behavior, NodeKind::Result,
    NodeKind::Condition, NodeKind::Boolean,  NodeKind::Loop,
    NodeKind::Variable,
};

enum class Relation {
  Performs,
  Produces,
  Guards,
  Repeats,
  Reads,
  Writes,
  Sequence,
};

inline constexpr Relation kRelations[] = {
    Relation::Performs, Relation::Produces, Relation::Guards,
    Relation::Repeats,  Relation::Reads,    Relation::Writes,
    Relation::Sequence,
};

enum class Origin { System, Learner, RemixSuggested };

std::string_view to_string(NodeKind k) noexcept;
std::string_view to_string(Relation r) noexcept;
std::string_view to_string(Origin o) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view s) noexcept;
std::optional<Relation> relation_from_string(std::string_view s) noexcept;
std::optional<Origin> origin_from_string(std::string_view s) noexcept;

// Character, Behavior and Result are event nodes; the rest are
// computing-concept (CC) nodes.
bool is_event_node(NodeKind k) noexcept;
bool is_cc_node(NodeKind k) noexcept;

struct Canvas {
  CanvasId id;
  std::string title;
  // Free-text event description; passed to generation as context.
  std::string note;

  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct GraphNode {
  NodeId id;
  NodeKind kind = NodeKind::Character;
  std::string label;
  std::optional<std::string> description;
  std::optional<std::string> image_ref;
  Origin origin = Origin::Learner;
  CanvasId canvas;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  EdgeId id;
  NodeId from;
  NodeId to;
  Relation relation = Relation::Performs;
  Origin origin = Origin::Learner;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// "<from>|<relation>|<to>"
EdgeId canonical_edge_id(const NodeId& from, Relation r, const NodeId& to);

struct VisualGraph {
  std::vector<Canvas> canvases;
  std::map<NodeId, GraphNode> nodes;
  std::map<EdgeId, GraphEdge> edges;

  const Canvas* find_canvas(const CanvasId& id) const;
  const GraphNode* find_node(const NodeId& id) const;
  const GraphEdge* find_edge(const EdgeId& id) const;
  // Edge with the same (from, relation, to), if any.
  const GraphEdge* find_triple(const NodeId& from, Relation r,
                               const NodeId& to) const;

  friend bool operator==(const VisualGraph&, const VisualGraph&) = default;
};

namespace op {
struct AddCanvas {
  Canvas canvas;
};
struct AddNode {
  GraphNode node;
};
// The edge id is derived with canonical_edge_id.
struct AddEdge {
  NodeId from;
  NodeId to;
  Relation relation = Relation::Performs;
  Origin origin = Origin::Learner;
};
struct RemoveNode {
  NodeId id;
};
struct RemoveEdge {
  EdgeId id;
};
struct SetLabel {
  NodeId id;
  std::string label;
};
}  // namespace op

using GraphOp = std::variant<op::AddCanvas, op::AddNode, op::AddEdge,
                             op::RemoveNode, op::RemoveEdge, op::SetLabel>;

/// Returns a new graph with `operation` applied; the input is untouched.
/// Removing a node removes its incident edges.
///
/// Errors: UnknownId (missing node, edge or canvas), DuplicateId (node or
/// canvas id already present), DuplicateEdge (same from/relation/to),
/// KindViolation (relation not allowed between the node kinds, or a
/// self-loop), InvalidArgument (empty label or id).
VisualGraph mutate_graph(const VisualGraph& graph, const GraphOp& operation);

}  // namespace remixlab::graph
