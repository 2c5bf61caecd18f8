#include "remixlab/ct/categories.hpp"

#include <algorithm>
#include <array>

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"

namespace remixlab::ct {
namespace {

constexpr std::array<std::string_view, 2> kConditions{"control_if",
                                                      "control_if_else"};
constexpr std::array<std::string_view, 3> kLoops{
    "control_repeat", "control_forever", "control_repeat_until"};
constexpr std::array<std::string_view, 3> kVariables{
    "data_setvariableto", "data_changevariableby", "data_variable"};
constexpr std::array<std::string_view, 12> kBooleans{
    "operator_gt",           "operator_lt",
    "operator_equals",       "operator_and",
    "operator_or",           "operator_not",
    "operator_contains",     "sensing_touchingobject",
    "sensing_touchingcolor", "sensing_coloristouchingcolor",
    "sensing_keypressed",    "sensing_mousedown",
};

template <std::size_t N>
bool member(const std::array<std::string_view, N>& set, std::string_view op) {
  return std::find(set.begin(), set.end(), op) != set.end();
}

}  // namespace

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::Conditions: return "conditions";
    case Category::Loops: return "loops";
    case Category::Variables: return "variables";
    case Category::Booleans: return "booleans";
    case Category::Other: return "other";
  }
  return "other";
}

Category block_category(std::string_view opcode) noexcept {
  if (member(kConditions, opcode)) return Category::Conditions;
  if (member(kLoops, opcode)) return Category::Loops;
  if (member(kVariables, opcode)) return Category::Variables;
  if (member(kBooleans, opcode)) return Category::Booleans;
  return Category::Other;
}

std::size_t CategoryStats::count(Category c) const {
  auto it = counts.find(c);
  return it == counts.end() ? 0 : it->second;
}

double CategoryStats::fraction(Category c) const {
  auto it = fractions.find(c);
  return it == fractions.end() ? 0.0 : it->second;
}

CategoryStats stats_from_counts(
    const std::map<Category, std::size_t>& counts) {
  CategoryStats stats;
  for (Category c : kCategories) {
    auto it = counts.find(c);
    std::size_t n = it == counts.end() ? 0 : it->second;
    stats.counts[c] = n;
    stats.total_blocks += n;
  }
  if (stats.total_blocks == 0) {
    throw Error(Errc::EmptyProject, "no blocks to categorize");
  }
  for (Category c : kCategories) {
    stats.fractions[c] = static_cast<double>(stats.counts[c]) /
                         static_cast<double>(stats.total_blocks);
  }
  return stats;
}

CategoryStats block_category_stats(const sb3::BlockForest& forest) {
  std::map<Category, std::size_t> counts;
  for (const auto& sprite : forest.sprites) {
    for (const auto& [id, node] : sprite.nodes) {
      ++counts[block_category(node.opcode)];
    }
  }
  return stats_from_counts(counts);
}

nlohmann::json stats_to_json(const CategoryStats& stats) {
  nlohmann::json counts = nlohmann::json::object();
  nlohmann::json fractions = nlohmann::json::object();
  for (Category c : kCategories) {
    counts[std::string(to_string(c))] = stats.count(c);
    fractions[std::string(to_string(c))] = stats.fraction(c);
  }
  return {{"counts", std::move(counts)},
          {"fractions", std::move(fractions)},
          {"total_blocks", stats.total_blocks}};
}

}  // namespace remixlab::ct
