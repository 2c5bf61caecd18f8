#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "remixlab/error.hpp"
#include "remixlab/sb3/project.hpp"

namespace rl = remixlab;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rl::Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const rl::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return rl::Errc::IoError;
}

const char* kMinimal =
    R"({"targets":[{"isStage":true,"name":"Stage","variables":{},"lists":{},)"
    R"("broadcasts":{},"blocks":{},"costumes":[],"sounds":[]}],)"
    R"("meta":{"semver":"3.0.0"}})";

}  // namespace

TEST(LoadProject, MinimalProjectHasOneTargetNoBlocks) {
  auto p = rl::sb3::load_project_text(kMinimal);
  EXPECT_EQ(p.targets.size(), 1u);
  EXPECT_EQ(p.block_count(), 0u);
  EXPECT_TRUE(p.stage().is_stage);
}

TEST(LoadProject, SoccerMinCounts) {
  auto p = rl::testing::load_fixture("soccer_min");
  EXPECT_EQ(p.targets.size(), 3u);
  EXPECT_EQ(p.block_count(), 14u);
}

TEST(LoadProject, FixtureTargetAndBlockCounts) {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> expected{
      {"empty", {1, 0}},          {"soccer_min", {3, 14}},
      {"logic_levels", {2, 1}},   {"single_move", {2, 2}},
      {"forever_move", {2, 3}},   {"bounce", {2, 5}},
      {"if_else_logic", {2, 9}},  {"broadcast_sync", {3, 8}},
      {"clones_custom", {2, 9}},  {"lists_data", {2, 8}},
      {"interactivity", {2, 8}},  {"repeat_until", {2, 7}},
      {"orphan_stack", {2, 5}},   {"extension_pen", {2, 5}},
      {"parallel_play", {3, 12}}, {"two_conditions", {2, 10}},
  };
  for (const auto& [name, counts] : expected) {
    auto p = rl::testing::load_fixture(name);
    EXPECT_EQ(p.targets.size(), counts.first) << name;
    EXPECT_EQ(p.block_count(), counts.second) << name;
  }
}

TEST(LoadProject, BlockCountMatchesSourceEntries) {
  for (const auto& name : rl::testing::fixture_names()) {
    json doc = json::parse(slurp(rl::testing::src_path(name)));
    auto p = rl::testing::load_fixture(name);
    EXPECT_EQ(p.block_count(), rl::testing::source_block_entries(doc)) << name;
  }
}

TEST(LoadProject, ArchiveAndBareTextAgree) {
  for (const auto& name : rl::testing::fixture_names()) {
    auto a = rl::testing::load_fixture(name);
    auto b = rl::sb3::load_project_text(slurp(rl::testing::src_path(name)));
    ASSERT_EQ(a.targets.size(), b.targets.size()) << name;
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
      EXPECT_EQ(a.targets[i].name, b.targets[i].name);
      EXPECT_EQ(a.targets[i].blocks.size(), b.targets[i].blocks.size());
    }
  }
}

TEST(LoadProject, ArchiveWithoutProjectJson) {
  auto path = rl::testing::fixture_dir() / "no_project.zip";
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_file(path); }),
            rl::Errc::MalformedArchive);
}

TEST(LoadProject, SyntaxErrorCarriesByteOffset) {
  try {
    rl::sb3::load_project_text("{\"targets\": [}");
    FAIL();
  } catch (const rl::Error& e) {
    EXPECT_EQ(e.code(), rl::Errc::MalformedProject);
    EXPECT_EQ(e.location(), "byte 14");
  }
}

TEST(LoadProject, MissingKeyReportsPath) {
  json doc = json::parse(kMinimal);
  doc["targets"][0].erase("blocks");
  try {
    rl::sb3::load_project_text(doc.dump());
    FAIL();
  } catch (const rl::Error& e) {
    EXPECT_EQ(e.code(), rl::Errc::SchemaViolation);
    EXPECT_EQ(e.location(), "/targets/0/blocks");
  }
}

TEST(LoadProject, ScratchTwoIsRejected) {
  auto text = slurp(rl::testing::src_path("scratch2_legacy"));
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_text(text); }),
            rl::Errc::SchemaViolation);
}

TEST(LoadProject, StageCountMustBeOne) {
  json doc = json::parse(kMinimal);
  doc["targets"][0]["isStage"] = false;
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_text(doc.dump()); }),
            rl::Errc::SchemaViolation);
  doc = json::parse(kMinimal);
  doc["targets"].push_back(doc["targets"][0]);
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_text(doc.dump()); }),
            rl::Errc::SchemaViolation);
}

TEST(LoadProject, DuplicateSpriteNamesRejected) {
  json doc = json::parse(kMinimal);
  json sprite = doc["targets"][0];
  sprite["isStage"] = false;
  sprite["name"] = "Cat";
  doc["targets"].push_back(sprite);
  doc["targets"].push_back(sprite);
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_text(doc.dump()); }),
            rl::Errc::SchemaViolation);
}

TEST(LoadProject, DuplicateVariableNamesRejected) {
  json doc = json::parse(kMinimal);
  doc["targets"][0]["variables"] = {{"v1", {"score", 0}}, {"v2", {"score", 1}}};
  EXPECT_EQ(code_of([&] { rl::sb3::load_project_text(doc.dump()); }),
            rl::Errc::SchemaViolation);
}

TEST(LoadProject, ShadowInputsAreFlattenedToLiterals) {
  auto p = rl::testing::load_fixture("soccer_min");
  const auto& striker = p.targets[1];
  const auto& move = striker.blocks.at(rl::BlockId("sk05"));
  ASSERT_EQ(move.inputs.size(), 1u);
  const auto* lit = move.inputs[0].literal();
  ASSERT_NE(lit, nullptr);
  EXPECT_EQ(lit->kind, rl::sb3::LiteralKind::Number);
  EXPECT_EQ(lit->text, "10");

  const auto& ball = p.targets[2];
  EXPECT_EQ(ball.blocks.count(rl::BlockId("ba05")), 0u);
  const auto& touching = ball.blocks.at(rl::BlockId("ba04"));
  ASSERT_EQ(touching.inputs.size(), 1u);
  ASSERT_NE(touching.inputs[0].literal(), nullptr);
  EXPECT_EQ(touching.inputs[0].literal()->text, "Striker");
}

TEST(LoadProject, ExtensionOpcodesArePreserved) {
  auto p = rl::testing::load_fixture("extension_pen");
  bool found = false;
  for (const auto& t : p.targets) {
    for (const auto& [id, b] : t.blocks) {
      if (b.opcode.rfind("pen_", 0) == 0) found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(LoadProject, AssetIndexCoversCostumes) {
  auto p = rl::testing::load_fixture("soccer_min");
  EXPECT_FALSE(p.asset_index.empty());
  for (const auto& [id, asset] : p.asset_index) {
    EXPECT_FALSE(asset.name.empty()) << id;
  }
}

TEST(LoadProject, IsDeterministic) {
  auto bytes = rl::sb3::read_file_bytes(rl::testing::sb3_path("parallel_play"));
  auto a = rl::sb3::load_project(bytes);
  auto b = rl::sb3::load_project(bytes);
  ASSERT_EQ(a.targets.size(), b.targets.size());
  for (std::size_t i = 0; i < a.targets.size(); ++i) {
    ASSERT_EQ(a.targets[i].blocks.size(), b.targets[i].blocks.size());
    for (const auto& [id, blk] : a.targets[i].blocks) {
      const auto& other = b.targets[i].blocks.at(id);
      EXPECT_EQ(blk.opcode, other.opcode);
      EXPECT_EQ(blk.inputs, other.inputs);
      EXPECT_EQ(blk.fields, other.fields);
      EXPECT_EQ(blk.parent, other.parent);
      EXPECT_EQ(blk.next, other.next);
    }
  }
}
