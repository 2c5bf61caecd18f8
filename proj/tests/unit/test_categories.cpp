#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "remixlab/ct/categories.hpp"
#include "remixlab/error.hpp"

namespace rl = remixlab;
using rl::ct::Category;

TEST(Categories, OpcodeMap) {
  EXPECT_EQ(rl::ct::block_category("control_if"), Category::Conditions);
  EXPECT_EQ(rl::ct::block_category("control_if_else"), Category::Conditions);
  EXPECT_EQ(rl::ct::block_category("control_forever"), Category::Loops);
  EXPECT_EQ(rl::ct::block_category("control_repeat_until"), Category::Loops);
  EXPECT_EQ(rl::ct::block_category("data_variable"), Category::Variables);
  EXPECT_EQ(rl::ct::block_category("data_changevariableby"), Category::Variables);
  EXPECT_EQ(rl::ct::block_category("operator_lt"), Category::Booleans);
  EXPECT_EQ(rl::ct::block_category("sensing_touchingobject"), Category::Booleans);
  EXPECT_EQ(rl::ct::block_category("operator_add"), Category::Other);
  EXPECT_EQ(rl::ct::block_category("data_addtolist"), Category::Other);
  EXPECT_EQ(rl::ct::block_category("pen_penDown"), Category::Other);
}

TEST(Categories, TwoConditionsFixture) {
  auto s = rl::ct::block_category_stats(rl::testing::forest_of("two_conditions"));
  EXPECT_EQ(s.total_blocks, 10u);
  EXPECT_EQ(s.count(Category::Conditions), 2u);
  EXPECT_DOUBLE_EQ(s.fraction(Category::Conditions), 0.2);
  EXPECT_EQ(s.count(Category::Loops), 1u);
  EXPECT_EQ(s.count(Category::Variables), 1u);
  EXPECT_EQ(s.count(Category::Booleans), 2u);
  EXPECT_EQ(s.count(Category::Other), 4u);
}

TEST(Categories, NoConceptBlocksMeansAllOther) {
  auto s = rl::ct::block_category_stats(rl::testing::forest_of("single_move"));
  EXPECT_DOUBLE_EQ(s.fraction(Category::Other), 1.0);
  for (Category c : {Category::Conditions, Category::Loops, Category::Variables,
                     Category::Booleans}) {
    EXPECT_EQ(s.fraction(c), 0.0);
  }
}

TEST(Categories, PartitionHoldsOnEveryFixture) {
  for (const auto& name : rl::testing::fixture_names()) {
    auto f = rl::testing::forest_of(name);
    if (f.node_count() == 0) continue;
    auto s = rl::ct::block_category_stats(f);
    std::size_t sum = 0;
    double fsum = 0;
    for (Category c : rl::ct::kCategories) {
      sum += s.count(c);
      fsum += s.fraction(c);
      EXPECT_DOUBLE_EQ(s.fraction(c), static_cast<double>(s.count(c)) / s.total_blocks);
    }
    EXPECT_EQ(sum, s.total_blocks) << name;
    EXPECT_EQ(s.total_blocks, f.node_count()) << name;
    EXPECT_NEAR(fsum, 1.0, 1e-9) << name;
  }
}

TEST(Categories, EmptyForestIsEmptyProject) {
  try {
    rl::ct::block_category_stats(rl::testing::forest_of("empty"));
    FAIL();
  } catch (const rl::Error& e) {
    EXPECT_EQ(e.code(), rl::Errc::EmptyProject);
  }
}
