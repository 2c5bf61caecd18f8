#pragma once

#include <cstddef>

#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::sb3 {

// Where a visited block sits relative to the script being walked.
struct VisitContext {
  const BlockNode* root = nullptr;
  // Block whose substack or input slot holds the current stack; null for
  // the top-level stack of a script.
  const BlockNode* container = nullptr;
  // First block of the stack the current block belongs to.
  const BlockNode* stack_head = nullptr;
  std::size_t depth = 0;
  std::size_t stack_position = 0;
  bool in_input = false;
};

class ForestVisitor {
 public:
  virtual ~ForestVisitor() = default;

  virtual void enter_sprite(const SpriteForest&) {}
  virtual void leave_sprite(const SpriteForest&) {}
  virtual void enter_script(const SpriteForest&, const BlockNode& /*root*/) {}
  virtual void leave_script(const SpriteForest&, const BlockNode& /*root*/) {}
  virtual void visit_block(const SpriteForest&, const BlockNode&,
                           const VisitContext&) {}
};

/// Pre-order depth-first walk over every script root in forest order.
/// Children are visited as data inputs, then substacks, then next. The
/// walk is iterative, so very deep stacks do not exhaust the call stack.
void walk_forest(const BlockForest& forest, ForestVisitor& visitor);

}  // namespace remixlab::sb3
