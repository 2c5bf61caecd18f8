#include <benchmark/benchmark.h>

#include <random>

#include "remixlab/ct/analyzer.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/kb/knowledge_base.hpp"
#include "remixlab/kb/records.hpp"
#include "remixlab/remix/image.hpp"
#include "remixlab/remix/remix.hpp"
#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/sb3/project.hpp"
#include "remixlab/scaffold/engine.hpp"

namespace rl = remixlab;

namespace {

std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(REMIXLAB_FIXTURE_DIR) / "sb3" / (name + ".sb3");
}

const rl::sb3::BlockForest& soccer() {
  static const auto forest = rl::sb3::build_block_tree(rl::sb3::load_project_file(fixture("soccer_min")));
  return forest;
}

void BM_LoadAndBuildForest(benchmark::State& state) {
  auto bytes = rl::sb3::read_file_bytes(fixture("soccer_min"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rl::sb3::build_block_tree(rl::sb3::load_project(bytes)));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_LoadAndBuildForest);

void BM_ScoreCt(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rl::ct::score_ct(soccer()));
}
BENCHMARK(BM_ScoreCt);

void BM_ExtractReferenceGraph(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rl::graph::extract_reference_graph(soccer()));
}
BENCHMARK(BM_ExtractReferenceGraph);

void BM_GraphRoundTrip(benchmark::State& state) {
  auto g = rl::graph::extract_reference_graph(soccer());
  for (auto _ : state) benchmark::DoNotOptimize(rl::graph::deserialize_graph(rl::graph::serialize_graph(g)));
}
BENCHMARK(BM_GraphRoundTrip);

// Knowledge base of `n` synthetic entries.
rl::kb::KnowledgeBase synthetic_kb(std::size_t n) {
  static const char* vocab[] = {"list", "loop", "score", "cat", "jump", "sprite", "forever", "broadcast",
                                "game", "level", "clone", "timer", "costume", "sound", "variable", "edge"};
  std::mt19937_64 rng(1);
  std::vector<rl::kb::Candidate> cands;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "entry" + std::to_string(i);
    for (int w = 0; w < 10; ++w) s += std::string(" ") + vocab[rng() % 16];
    cands.push_back({s, "", {rl::kb::Tag::Concept}});
  }
  return rl::kb::dedup(cands, rl::kb::HashedTfIdfEmbedder(), 0.99);
}

void BM_Retrieve(benchmark::State& state) {
  auto kb = synthetic_kb(static_cast<std::size_t>(state.range(0)));
  rl::kb::HashedTfIdfEmbedder e;
  for (auto _ : state) benchmark::DoNotOptimize(rl::kb::retrieve(kb, e, "how do I keep score with a variable"));
}
BENCHMARK(BM_Retrieve)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BuildKnowledgeBase(benchmark::State& state) {
  auto records = rl::kb::load_records((std::filesystem::path(REMIXLAB_FIXTURE_DIR) / "corpus" / "records.jsonl").string());
  for (auto _ : state) benchmark::DoNotOptimize(rl::kb::build_knowledge_base(records, {.built_at = 0}));
}
BENCHMARK(BM_BuildKnowledgeBase);

void BM_ConstructiveLoop(benchmark::State& state) {
  rl::scaffold::StubBackend backend;
  rl::scaffold::Moderator moderator;
  rl::scaffold::ScaffoldEngine engine(backend, moderator);
  using rl::scaffold::TurnInput;
  const std::vector<TurnInput> turns{
      TurnInput::utterance("how does the scoreboard connect?"), TurnInput::got_it(), TurnInput::utterance("yes"),
      TurnInput::got_it(),
      TurnInput::utterance("the forever loop keeps checking if the ball touches the striker before adding score")};
  for (auto _ : state) {
    auto s = engine.start_session(soccer(), {}, "b");
    for (const auto& t : turns) s = engine.handle_turn(s, soccer(), t).session;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ConstructiveLoop);

void BM_DeriveImagePrompts(benchmark::State& state) {
  auto g = rl::graph::extract_reference_graph(soccer());
  rl::scaffold::StubBackend backend;
  rl::remix::RemixRequest req{"b", "I want an energy ball in this soccer game", g.canvases.front().id, "soccer"};
  for (auto _ : state) benchmark::DoNotOptimize(rl::remix::derive_image_prompts(req, g, backend));
}
BENCHMARK(BM_DeriveImagePrompts);

void BM_StubImage(benchmark::State& state) {
  rl::remix::StubImageBackend backend;
  rl::remix::ImageRequest req{"a glowing energy ball", "", std::string(64, 'a')};
  for (auto _ : state) benchmark::DoNotOptimize(backend.generate(req));
}
BENCHMARK(BM_StubImage);

}  // namespace
BENCHMARK_MAIN();
