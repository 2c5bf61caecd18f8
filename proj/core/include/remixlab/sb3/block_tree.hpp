#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "remixlab/ids.hpp"
#include "remixlab/sb3/project.hpp"

namespace remixlab::sb3 {

struct BlockNode {
  BlockId id;
  std::string opcode;
  // Data inputs only; nested stacks live in `substacks`.
  std::vector<Input> inputs;
  std::vector<Field> fields;
  std::optional<BlockId> parent;
  std::optional<BlockId> next;
  std::vector<BlockId> substacks;
  std::optional<std::string> proccode;

  bool is_hat() const noexcept;
  const Field* field(std::string_view name) const;
  const Input* input(std::string_view slot) const;
};

struct SpriteForest {
  std::string name;
  bool is_stage = false;
  std::vector<BlockId> roots;
  std::map<BlockId, BlockNode> nodes;

  const BlockNode* find(const BlockId& id) const;
};

struct BlockForest {
  std::vector<SpriteForest> sprites;

  std::size_t node_count() const;
  std::size_t script_count() const;

  struct Located {
    const SpriteForest* sprite = nullptr;
    const BlockNode* node = nullptr;
  };
  // Block ids are unique per sprite; this returns the first match in
  // sprite order.
  Located find(const BlockId& id) const;
};

/// One script root per hat block and per orphan stack head, sorted by
/// block id within each sprite (sprites keep project order).
///
/// Errors: DanglingReference (a link names a missing block, or a block's
/// parent field disagrees with the block that references it),
/// CyclicStack (a next/parent loop), SchemaViolation (a block referenced
/// from two places, or a hat block nested inside a stack).
BlockForest build_block_tree(const ProjectModel& project);

enum class ViolationKind {
  DanglingParent,
  ParentMismatch,
  DanglingLink,
  HatWithParent,
  RootWithParent,
  CyclicNext,
  Unreachable,
  MultiplyReachable,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string sprite;
  BlockId block;
  std::string message;
};

// Empty iff every forest invariant holds. Ordered by (sprite position,
// block id, kind).
std::vector<Violation> validate_block_tree(const BlockForest& forest);

// Children in traversal order: data inputs (slot order), substacks, next.
std::vector<BlockId> child_blocks(const BlockNode& node);

}  // namespace remixlab::sb3
