#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/ids.hpp"
#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::scaffold {

enum class DependencyKind {
  Script,  // next in the top-level stack under the hat
  Body,    // first or only substack of a loop or if
  Else,    // second substack of if-else
  Input,   // reporter plugged into a slot
};

std::string_view to_string(DependencyKind kind) noexcept;
std::optional<DependencyKind> dependency_kind_from_string(std::string_view s) noexcept;

struct DependencyEdge {
  BlockId from;
  BlockId to;
  DependencyKind kind;

  bool operator==(const DependencyEdge&) const = default;
};

struct BlockGraphHighlight {
  BlockId target;
  std::string sprite;
  /// Hat first, then enclosing containers outermost to innermost, the target,
  /// then the target's direct reporter inputs in slot order.
  std::vector<BlockId> generated_block;
  std::vector<DependencyEdge> edges;
  std::string summary;

  bool operator==(const BlockGraphHighlight&) const = default;
};

/// The target plus every enclosing loop or if, the script's hat, and the
/// reporters plugged straight into the target. A reporter target also pulls
/// in the block that consumes it. Throws TargetNotInProject.
BlockGraphHighlight control_closure(const sb3::BlockForest& forest,
                                    const BlockId& target);

}  // namespace remixlab::scaffold
