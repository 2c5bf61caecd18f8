#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "remixlab/sb3/block_tree.hpp"

namespace remixlab::ct {

enum class Category { Conditions, Loops, Variables, Booleans, Other };

inline constexpr std::array<Category, 5> kCategories{
    Category::Conditions, Category::Loops, Category::Variables,
    Category::Booleans, Category::Other};

std::string_view to_string(Category c) noexcept;

// conditions: control_if, control_if_else
// loops:      control_repeat, control_forever, control_repeat_until
// variables:  data_setvariableto, data_changevariableby, data_variable
// booleans:   comparison and logic operators, boolean sensing blocks
// other:      everything else
Category block_category(std::string_view opcode) noexcept;

struct CategoryStats {
  std::map<Category, std::size_t> counts;
  std::map<Category, double> fractions;
  std::size_t total_blocks = 0;

  std::size_t count(Category c) const;
  double fraction(Category c) const;
};

// Throws Error{Errc::EmptyProject} for a forest without blocks.
CategoryStats block_category_stats(const sb3::BlockForest& forest);

// Builds stats (with fractions) from raw counts; EmptyProject if all zero.
CategoryStats stats_from_counts(const std::map<Category, std::size_t>& counts);

nlohmann::json stats_to_json(const CategoryStats& stats);

}  // namespace remixlab::ct
