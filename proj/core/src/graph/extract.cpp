#include "remixlab/graph/extract.hpp"

#include <set>

#include "remixlab/graph/adjacency.hpp"
#include "remixlab/sb3/describe.hpp"
#include "remixlab/sb3/opcodes.hpp"

namespace remixlab::graph {
namespace {

using sb3::BlockNode;
using sb3::OpcodeFamily;
using sb3::SpriteForest;

bool is_behavior_block(const BlockNode& b) {
  switch (sb3::opcode_family(b.opcode)) {
    case OpcodeFamily::Motion:
    case OpcodeFamily::Looks:
    case OpcodeFamily::Sound:
      return true;
    default:
      return false;
  }
}

bool is_result_block(std::string_view op) {
  return op == "data_setvariableto" || op == "data_changevariableby" ||
         op == "data_addtolist" || op == "data_deleteoflist" ||
         op == "data_deletealloflist" || op == "data_insertatlist" ||
         op == "data_replaceitemoflist" || op == "event_broadcast" ||
         op == "event_broadcastandwait" || op == "control_stop";
}

// Name of the variable or list a block touches, if any.
std::optional<std::string> data_name(const BlockNode& b) {
  if (sb3::opcode_family(b.opcode) != OpcodeFamily::Data) return std::nullopt;
  if (const auto* f = b.field("VARIABLE")) return f->value;
  if (const auto* f = b.field("LIST")) return f->value;
  return std::nullopt;
}

struct Builder {
  const SpriteForest& sprite;
  VisualGraph& g;
  std::set<NodeId>& connected;

  CanvasId canvas;
  NodeId character;

  NodeId block_node(const BlockNode& b) const {
    return NodeId("n:" + sprite.name + ":" + b.id.str());
  }

  void ensure_node(const NodeId& id, NodeKind kind, const std::string& label) {
    if (g.nodes.count(id)) return;
    GraphNode n;
    n.id = id;
    n.kind = kind;
    n.label = label.empty() ? std::string(to_string(kind)) : label;
    n.origin = Origin::System;
    n.canvas = canvas;
    g.nodes.emplace(id, std::move(n));
  }

  void edge(const NodeId& from, Relation r, const NodeId& to) {
    if (from == to) return;
    EdgeId id = canonical_edge_id(from, r, to);
    if (g.edges.count(id)) return;
    g.edges.emplace(id, GraphEdge{id, from, to, r, Origin::System});
    connected.insert(from);
    connected.insert(to);
  }

  NodeId variable(const std::string& name) {
    NodeId id("v:" + canvas.str() + ":" + name);
    ensure_node(id, NodeKind::Variable, name);
    return id;
  }

  // Variables and lists read anywhere inside an expression tree.
  void collect_reads(const BlockNode& b, std::set<std::string>& names) const {
    if (auto name = data_name(b)) names.insert(*name);
    for (const auto& in : b.inputs) {
      if (const auto* lit = in.literal()) {
        if (lit->kind == sb3::LiteralKind::Variable ||
            lit->kind == sb3::LiteralKind::List) {
          names.insert(lit->text);
        }
      } else if (const BlockNode* child = sprite.find(*in.block())) {
        collect_reads(*child, names);
      }
    }
  }

  struct Scope {
    std::vector<NodeId> loops;
    std::vector<NodeId> conditions;
  };

  void walk_stack(const BlockNode* head, const Scope& scope) {
    std::optional<NodeId> run;
    std::optional<NodeId> previous;
    for (const BlockNode* b = head; b; b = b->next ? sprite.find(*b->next) : nullptr) {
      if (is_behavior_block(*b)) {
        std::string text = sb3::describe_block(sprite, *b);
        if (run) {
          auto& label = g.nodes.at(*run).label;
          label += ", " + text;
          continue;
        }
        run = block_node(*b);
        ensure_node(*run, NodeKind::Behavior, text);
        edge(character, Relation::Performs, *run);
        for (const auto& l : scope.loops) edge(l, Relation::Repeats, *run);
        for (const auto& c : scope.conditions) edge(c, Relation::Guards, *run);
        if (previous) edge(*previous, Relation::Sequence, *run);
        continue;
      }
      if (run) {
        previous = run;
        run.reset();
      }

      if (sb3::is_loop(b->opcode)) {
        NodeId loop = block_node(*b);
        ensure_node(loop, NodeKind::Loop, sb3::describe_block(sprite, *b));
        Scope inner = scope;
        inner.loops.push_back(loop);
        for (const auto& s : b->substacks) walk_stack(sprite.find(s), inner);
      } else if (sb3::is_conditional(b->opcode)) {
        NodeId cond = block_node(*b);
        const sb3::Input* in = b->input("CONDITION");
        const BlockNode* test =
            in && in->block() ? sprite.find(*in->block()) : nullptr;
        std::string label =
            test ? "if " + sb3::render_expression(sprite, test->id) : "if";
        ensure_node(cond, NodeKind::Condition, label);
        Scope inner = scope;
        inner.conditions.push_back(cond);
        for (const auto& s : b->substacks) walk_stack(sprite.find(s), inner);
        if (connected.count(cond) && test) {
          if (sb3::is_boolean_reporter(test->opcode)) {
            NodeId boolean = block_node(*test);
            ensure_node(boolean, NodeKind::Boolean,
                        sb3::render_expression(sprite, test->id));
            edge(boolean, Relation::Reads, cond);
          }
          std::set<std::string> reads;
          collect_reads(*test, reads);
          for (const auto& name : reads) edge(variable(name), Relation::Reads, cond);
        }
      } else if (is_result_block(b->opcode)) {
        NodeId result = block_node(*b);
        ensure_node(result, NodeKind::Result, sb3::describe_block(sprite, *b));
        if (previous) edge(*previous, Relation::Produces, result);
        for (const auto& c : scope.conditions) edge(c, Relation::Guards, result);
        if (auto name = data_name(*b)) edge(variable(*name), Relation::Writes, result);
      } else {
        for (const auto& s : b->substacks) walk_stack(sprite.find(s), scope);
      }
    }
  }
};

}  // namespace

VisualGraph extract_reference_graph(const sb3::BlockForest& forest) {
  VisualGraph g;
  std::set<NodeId> connected;
  for (const SpriteForest& sprite : forest.sprites) {
    Builder b{sprite, g, connected, {}, NodeId("ch:" + sprite.name)};
    bool first = true;
    for (const BlockId& root_id : sprite.roots) {
      const BlockNode* root = sprite.find(root_id);
      if (!root || !root->is_hat()) continue;
      b.canvas = CanvasId("cv:" + sprite.name + ":" + root_id.str());
      g.canvases.push_back(
          {b.canvas, sprite.name + ": " + sb3::describe_block(sprite, *root), ""});
      if (first) {
        b.ensure_node(b.character, NodeKind::Character, sprite.name);
        first = false;
      }
      b.walk_stack(root, {});
    }
  }
  // Drop nodes that never received an edge; Characters always stay.
  std::erase_if(g.nodes, [&](const auto& kv) {
    return kv.second.kind != NodeKind::Character && !connected.count(kv.first);
  });
  return g;
}

}  // namespace remixlab::graph
