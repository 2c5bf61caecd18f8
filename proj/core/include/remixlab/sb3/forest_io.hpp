#pragma once

#include <string>

#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::sb3 {

// Canonical text form of a forest (sorted keys, two-space indent). Stable
// across runs so it can back golden-file tests.
std::string serialize_forest(const BlockForest& forest);

}  // namespace remixlab::sb3
