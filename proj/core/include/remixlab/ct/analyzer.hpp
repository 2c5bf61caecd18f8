#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "remixlab/ct/rubric.hpp"
#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::ct {

struct Evidence {
  BlockId block;
  std::string opcode;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

inline constexpr std::size_t kEvidenceCap = 20;

struct CTReport {
  std::map<Dimension, int> dimension_scores;
  int total = 0;
  // Blocks behind the awarded level; empty for dimensions scored 0.
  std::map<Dimension, std::vector<Evidence>> evidence;

  int score(Dimension d) const;
};

/// Walks the forest depth-first, collecting opcode occurrences, hat
/// scripts per sprite and stack lengths, then awards each dimension the
/// highest rubric level whose predicate holds.
CTReport score_ct(const sb3::BlockForest& forest,
                  const Rubric& rubric = Rubric::builtin());

nlohmann::json report_to_json(const CTReport& report);

}  // namespace remixlab::ct
