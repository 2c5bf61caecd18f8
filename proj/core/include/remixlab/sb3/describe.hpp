#pragma once

#include <string>

#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::sb3 {

// Editor-style text for a block with its inputs filled in, e.g.
// "change score by 1" or "if touching Striker? then". Reporter inputs are
// rendered recursively; unknown opcodes fall back to the opcode name
// followed by their literal inputs.
std::string describe_block(const SpriteForest& sprite, const BlockNode& node);

// Expression text for a reporter or boolean block ("x position < -210").
std::string render_expression(const SpriteForest& sprite, const BlockId& id);

}  // namespace remixlab::sb3
