#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/sb3/project.hpp"

namespace remixlab::testing {

inline std::filesystem::path fixture_dir() { return REMIXLAB_FIXTURE_DIR; }

inline std::filesystem::path sb3_path(const std::string& name) {
  return fixture_dir() / "sb3" / (name + ".sb3");
}

inline std::filesystem::path src_path(const std::string& name) {
  return fixture_dir() / "src" / (name + ".json");
}

inline std::vector<std::string> fixture_names() {
  return {"empty",          "soccer_min",    "logic_levels", "single_move",
          "forever_move",   "bounce",        "if_else_logic",
          "broadcast_sync", "clones_custom", "lists_data",   "interactivity",
          "repeat_until",   "orphan_stack",  "extension_pen",
          "parallel_play",  "two_conditions"};
}

inline sb3::ProjectModel load_fixture(const std::string& name) {
  return sb3::load_project_file(sb3_path(name));
}

inline sb3::BlockForest forest_of(const std::string& name) {
  return sb3::build_block_tree(load_fixture(name));
}

// Independent count straight off the source document: every non-shadow
// block object plus every loose top-level reporter array.
inline std::size_t source_block_entries(const nlohmann::json& doc) {
  std::size_t n = 0;
  for (const auto& t : doc["targets"]) {
    for (const auto& [id, b] : t["blocks"].items()) {
      if (b.is_array()) {
        ++n;
      } else if (!b.value("shadow", false)) {
        ++n;
      }
    }
  }
  return n;
}

}  // namespace remixlab::testing
