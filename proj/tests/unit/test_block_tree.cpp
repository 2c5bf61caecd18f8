#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "remixlab/error.hpp"
#include "remixlab/sb3/forest_io.hpp"
#include "remixlab/sb3/traversal.hpp"

namespace rl = remixlab;
using rl::BlockId;
using rl::sb3::ViolationKind;
using nlohmann::json;

namespace {

const char* kTwoBlock = R"({
  "meta": {"semver": "3.0.0"},
  "targets": [
    {"isStage": true, "name": "Stage", "blocks": {}},
    {"isStage": false, "name": "Cat", "blocks": {
      "a": {"opcode": "event_whenflagclicked", "parent": null, "next": "b",
            "inputs": {}, "fields": {}, "topLevel": true},
      "b": {"opcode": "motion_movesteps", "parent": "a", "next": null,
            "inputs": {"STEPS": [1, [4, "10"]]}, "fields": {}}
    }}
  ]
})";

rl::Errc build_error(const json& doc) {
  try {
    rl::sb3::build_block_tree(rl::sb3::load_project_text(doc.dump()));
  } catch (const rl::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return rl::Errc::IoError;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Stack size of one script: every block reachable by child links.
std::size_t stack_size(const rl::sb3::SpriteForest& s, const BlockId& root) {
  std::size_t n = 0;
  std::vector<BlockId> todo{root};
  while (!todo.empty()) {
    BlockId id = todo.back();
    todo.pop_back();
    ++n;
    for (auto& c : rl::sb3::child_blocks(*s.find(id))) todo.push_back(c);
  }
  return n;
}

}  // namespace

TEST(BlockTree, TwoBlockChain) {
  auto forest = rl::sb3::build_block_tree(rl::sb3::load_project_text(kTwoBlock));
  EXPECT_EQ(forest.script_count(), 1u);
  EXPECT_EQ(forest.node_count(), 2u);
  const auto& cat = forest.sprites[1];
  ASSERT_EQ(cat.roots.size(), 1u);
  const auto* root = cat.find(cat.roots[0]);
  ASSERT_NE(root, nullptr);
  EXPECT_EQ(root->next, BlockId("b"));
}

TEST(BlockTree, SoccerMinRootsAndNodes) {
  auto forest = rl::testing::forest_of("soccer_min");
  EXPECT_EQ(forest.script_count(), 4u);
  EXPECT_EQ(forest.node_count(), 14u);
  EXPECT_EQ(forest.sprites[1].roots,
            (std::vector<BlockId>{BlockId("sk01"), BlockId("sk06")}));
  EXPECT_EQ(forest.sprites[2].roots,
            (std::vector<BlockId>{BlockId("ba01"), BlockId("ba08")}));
  const auto* forever = forest.sprites[2].find(BlockId("ba02"));
  ASSERT_NE(forever, nullptr);
  EXPECT_EQ(forever->substacks, std::vector<BlockId>{BlockId("ba03")});
}

TEST(BlockTree, FixtureRootCounts) {
  const std::map<std::string, std::size_t> roots{
      {"empty", 0},          {"soccer_min", 4},    {"logic_levels", 1},
      {"single_move", 1},    {"forever_move", 1},  {"bounce", 1},
      {"if_else_logic", 1},  {"broadcast_sync", 2}, {"clones_custom", 3},
      {"lists_data", 2},     {"interactivity", 3}, {"repeat_until", 1},
      {"orphan_stack", 3},   {"extension_pen", 1}, {"parallel_play", 6},
      {"two_conditions", 1},
  };
  for (const auto& [name, n] : roots) {
    EXPECT_EQ(rl::testing::forest_of(name).script_count(), n) << name;
  }
}

TEST(BlockTree, NodeCountEqualsSumOfStackSizes) {
  for (const auto& name : rl::testing::fixture_names()) {
    auto forest = rl::testing::forest_of(name);
    std::size_t sum = 0;
    for (const auto& s : forest.sprites) {
      for (const auto& r : s.roots) sum += stack_size(s, r);
    }
    EXPECT_EQ(sum, forest.node_count()) << name;
    EXPECT_EQ(forest.node_count(), rl::testing::load_fixture(name).block_count());
  }
}

TEST(BlockTree, SelfCycleIsCyclicStack) {
  json doc = json::parse(kTwoBlock);
  auto& b = doc["targets"][1]["blocks"]["b"];
  b["next"] = "b";
  b["parent"] = "b";
  EXPECT_EQ(build_error(doc), rl::Errc::CyclicStack);
}

TEST(BlockTree, TwoBlockCycleIsCyclicStack) {
  json doc = json::parse(kTwoBlock);
  auto& blocks = doc["targets"][1]["blocks"];
  blocks["a"]["opcode"] = "motion_turnright";
  blocks["a"]["parent"] = "b";
  blocks["b"]["next"] = "a";
  EXPECT_EQ(build_error(doc), rl::Errc::CyclicStack);
}

TEST(BlockTree, MissingNextIsDanglingReference) {
  json doc = json::parse(kTwoBlock);
  doc["targets"][1]["blocks"]["b"]["next"] = "zz";
  EXPECT_EQ(build_error(doc), rl::Errc::DanglingReference);
}

TEST(BlockTree, MissingParentIsDanglingReference) {
  json doc = json::parse(kTwoBlock);
  doc["targets"][1]["blocks"]["a"]["parent"] = "zz";
  EXPECT_EQ(build_error(doc), rl::Errc::DanglingReference);
}

TEST(BlockTree, HatWithParentIsRejected) {
  json doc = json::parse(kTwoBlock);
  auto& blocks = doc["targets"][1]["blocks"];
  blocks["c"] = {{"opcode", "event_whenkeypressed"}, {"parent", "b"},
                 {"next", nullptr}, {"inputs", json::object()},
                 {"fields", json::object()}};
  blocks["b"]["next"] = "c";
  EXPECT_EQ(build_error(doc), rl::Errc::SchemaViolation);
}

TEST(BlockTree, OrphanStacksAreKeptAsRoots) {
  auto forest = rl::testing::forest_of("orphan_stack");
  std::size_t hats = 0, orphans = 0;
  for (const auto& s : forest.sprites) {
    for (const auto& r : s.roots) (s.find(r)->is_hat() ? hats : orphans)++;
  }
  EXPECT_GE(orphans, 1u);
  EXPECT_EQ(hats + orphans, 3u);
}

TEST(ValidateBlockTree, BuiltForestsAreValid) {
  for (const auto& name : rl::testing::fixture_names()) {
    EXPECT_TRUE(rl::sb3::validate_block_tree(rl::testing::forest_of(name)).empty())
        << name;
  }
}

TEST(ValidateBlockTree, AbsentParentIsReported) {
  auto forest = rl::testing::forest_of("single_move");
  auto& cat = forest.sprites[1];
  BlockId move = *cat.find(cat.roots[0])->next;
  cat.nodes.at(move).parent = BlockId("ghost");
  auto v = rl::sb3::validate_block_tree(forest);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::DanglingParent);
  EXPECT_EQ(v[0].block, move);
}

TEST(ValidateBlockTree, HatWithParentIsReported) {
  auto forest = rl::testing::forest_of("soccer_min");
  auto& striker = forest.sprites[1];
  // Hang the key-press hat under the move block.
  striker.nodes.at(BlockId("sk05")).next = BlockId("sk06");
  striker.nodes.at(BlockId("sk06")).parent = BlockId("sk05");
  auto v = rl::sb3::validate_block_tree(forest);
  bool hat = false;
  for (const auto& x : v) {
    if (x.kind == ViolationKind::HatWithParent && x.block == BlockId("sk06")) {
      hat = true;
    }
  }
  EXPECT_TRUE(hat);
}

TEST(ValidateBlockTree, NextCycleIsReported) {
  auto forest = rl::testing::forest_of("single_move");
  auto& cat = forest.sprites[1];
  BlockId move = *cat.find(cat.roots[0])->next;
  cat.nodes.at(move).next = move;
  auto v = rl::sb3::validate_block_tree(forest);
  bool cyclic = false;
  for (const auto& x : v) cyclic |= x.kind == ViolationKind::CyclicNext;
  EXPECT_TRUE(cyclic);
}

TEST(ValidateBlockTree, ViolationsAreOrdered) {
  auto forest = rl::testing::forest_of("soccer_min");
  forest.sprites[2].nodes.at(BlockId("ba07")).parent = BlockId("x1");
  forest.sprites[1].nodes.at(BlockId("sk07")).parent = BlockId("x2");
  forest.sprites[1].nodes.at(BlockId("sk03")).parent = BlockId("x3");
  auto v = rl::sb3::validate_block_tree(forest);
  ASSERT_GE(v.size(), 3u);
  EXPECT_EQ(v[0].sprite, "Striker");
  EXPECT_EQ(v[0].block, BlockId("sk03"));
  EXPECT_EQ(v.back().sprite, "Soccer Ball");
}

TEST(ForestIo, SerializationIsDeterministic) {
  for (const auto& name : rl::testing::fixture_names()) {
    EXPECT_EQ(rl::sb3::serialize_forest(rl::testing::forest_of(name)),
              rl::sb3::serialize_forest(rl::testing::forest_of(name)));
  }
}

TEST(ForestIo, MatchesGoldenFiles) {
  for (const std::string name : {"soccer_min", "two_conditions", "lists_data"}) {
    auto golden = rl::testing::fixture_dir() / "golden" / (name + ".forest.json");
    std::string actual = rl::sb3::serialize_forest(rl::testing::forest_of(name));
    if (std::getenv("REMIXLAB_UPDATE_GOLDEN")) {
      std::ofstream(golden, std::ios::binary) << actual;
    }
    EXPECT_EQ(actual, slurp(golden)) << name;
  }
}

TEST(ForestIo, KeysAreSorted) {
  json doc = json::parse(rl::sb3::serialize_forest(rl::testing::forest_of("soccer_min")));
  EXPECT_EQ(doc["format"], "remixlab.forest");
  EXPECT_EQ(doc["version"], 1);
  EXPECT_EQ(doc["sprites"].size(), 3u);
  EXPECT_EQ(doc["sprites"][2]["nodes"]["ba06"]["opcode"], "data_changevariableby");
}

namespace {

struct Recorder : rl::sb3::ForestVisitor {
  std::vector<std::string> order;
  std::vector<std::size_t> depth;
  void visit_block(const rl::sb3::SpriteForest&, const rl::sb3::BlockNode& n,
                   const rl::sb3::VisitContext& ctx) override {
    order.push_back(n.id.str());
    depth.push_back(ctx.depth);
  }
};

}  // namespace

TEST(Traversal, PreOrderInputsThenSubstacksThenNext) {
  auto forest = rl::testing::forest_of("soccer_min");
  Recorder rec;
  rl::sb3::walk_forest(forest, rec);
  EXPECT_EQ(rec.order,
            (std::vector<std::string>{"sk01", "sk02", "sk03", "sk04", "sk05",
                                      "sk06", "sk07", "ba01", "ba02", "ba03",
                                      "ba04", "ba06", "ba07", "ba08"}));
  // ba04 sits in the if's CONDITION input, ba06 in its body.
  EXPECT_EQ(rec.depth[10], 2u);
  EXPECT_EQ(rec.depth[11], 2u);
}

TEST(Traversal, DeepStacksDoNotOverflow) {
  json doc = json::parse(kTwoBlock);
  auto& blocks = doc["targets"][1]["blocks"];
  blocks["b"]["next"] = "n0";
  const int depth = 20000;
  for (int i = 0; i < depth; ++i) {
    std::string id = "n" + std::to_string(i);
    blocks[id] = {{"opcode", "motion_turnright"},
                  {"parent", i == 0 ? "b" : "n" + std::to_string(i - 1)},
                  {"next", i + 1 < depth ? json("n" + std::to_string(i + 1)) : json(nullptr)},
                  {"inputs", json::object()},
                  {"fields", json::object()}};
  }
  auto forest = rl::sb3::build_block_tree(rl::sb3::load_project_text(doc.dump()));
  Recorder rec;
  rl::sb3::walk_forest(forest, rec);
  EXPECT_EQ(rec.order.size(), static_cast<std::size_t>(depth + 2));
}
