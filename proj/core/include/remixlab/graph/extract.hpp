#pragma once

#include "remixlab/graph/visual_graph.hpp"
#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::graph {

/// Builds the system's own graph of a project:
///  - one canvas per hat-rooted script ("cv:<sprite>:<hat id>");
///  - one Character per sprite that owns a hat script ("ch:<sprite>");
///  - one Behavior per maximal next-run of motion/looks/sound blocks,
///    performed by its Character, chained by sequence edges;
///  - Loop and Condition nodes for loops and if/if-else blocks, repeating
///    or guarding every Behavior/Result nested in their bodies;
///  - a Boolean for each boolean reporter plugged into an if condition;
///  - Result nodes for variable/list writes, broadcasts and stops;
///  - Variable nodes per (canvas, variable), reading into Conditions and
///    writing Results.
/// Nodes that would end up without edges are omitted, so the result passes
/// validate_graph. Block-derived node ids are "n:<sprite>:<block id>".
VisualGraph extract_reference_graph(const sb3::BlockForest& forest);

}  // namespace remixlab::graph
