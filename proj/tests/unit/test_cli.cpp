#include <gtest/gtest.h>

#include <cstdlib>
#include <regex>
#include <sstream>

#include "chat_script.hpp"
#include "cli.hpp"
#include "remixlab/ct/analyzer.hpp"
#include "remixlab/ct/corpus.hpp"
#include "remixlab/data.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/kb/kb_io.hpp"
#include "remixlab/kb/knowledge_base.hpp"
#include "service_support.hpp"

namespace rl = remixlab;
namespace fs = std::filesystem;
using nlohmann::json;
using rl::testing::TempDir;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = rl::cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path script(const std::string& name) { return rl::testing::fixture_dir() / "scripts" / name; }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "  state X" lines in order.
std::vector<std::string> states_of(const std::string& output) {
  std::vector<std::string> states;
  std::regex re("^  state (\\w+)$");
  std::istringstream in(output);
  for (std::string line; std::getline(in, line);) {
    std::smatch m;
    if (std::regex_match(line, m, re)) states.push_back(m[1]);
  }
  return states;
}

}  // namespace

TEST(Cli, AnalyzePrintsLibraryReport) {
  auto r = cli({"analyze", rl::testing::sb3_path("soccer_min").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto expected = rl::ct::report_to_json(rl::ct::score_ct(rl::testing::forest_of("soccer_min")));
  EXPECT_EQ(json::parse(r.out), expected);

  auto src = cli({"analyze", rl::testing::src_path("logic_levels").string()});
  ASSERT_EQ(src.code, 0) << src.err;
  EXPECT_EQ(json::parse(src.out)["total"],
            rl::ct::score_ct(rl::testing::forest_of("logic_levels")).total);
}

TEST(Cli, AnalyzeWithCustomRubric) {
  TempDir dir("cli");
  fs::path rubric = dir.path / "rubric.tsv";
  rl::util::write_file_atomic(rubric, rl::data_file("rubric.tsv"));
  auto r = cli({"analyze", rl::testing::sb3_path("bounce").string(), "--rubric", rubric.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out), rl::ct::report_to_json(rl::ct::score_ct(rl::testing::forest_of("bounce"))));
}

TEST(Cli, StatsMatchesCorpusScan) {
  fs::path dir = rl::testing::fixture_dir() / "sb3";
  auto r = cli({"stats", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, rl::ct::format_stats_table(rl::ct::corpus_scan(rl::ct::list_projects(dir))));
  EXPECT_EQ(cli({"stats", dir.string(), "--threads", "1"}).out, r.out);

  TempDir tmp("cli");
  fs::path out = tmp.path / "stats.tsv";
  ASSERT_EQ(cli({"stats", dir.string(), "--out", out.string()}).code, 0);
  EXPECT_EQ(rl::util::read_text_file(out), r.out);
}

TEST(Cli, GraphExtractAndDiff) {
  TempDir dir("cli");
  fs::path a = dir.path / "a.json";
  auto r = cli({"graph", "extract", rl::testing::sb3_path("soccer_min").string(), "--out", a.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto g = rl::graph::deserialize_graph(rl::util::read_text_file(a));
  EXPECT_EQ(g, rl::graph::extract_reference_graph(rl::testing::forest_of("soccer_min")));

  auto same = cli({"graph", "diff", a.string(), a.string()});
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out, "0 nodes, 0 edges\n");

  rl::graph::GraphNode n;
  n.id = rl::NodeId("energy");
  n.kind = rl::graph::NodeKind::Behavior;
  n.label = "shoot energy ball";
  n.origin = rl::graph::Origin::RemixSuggested;
  n.canvas = g.canvases.front().id;
  auto remixed = rl::graph::mutate_graph(g, rl::graph::op::AddNode{n});
  fs::path b = dir.path / "b.json";
  rl::util::write_file_atomic(b, rl::graph::serialize_graph(remixed));
  EXPECT_EQ(cli({"graph", "diff", a.string(), b.string()}).out, "1 nodes, 0 edges\n");
  EXPECT_EQ(json::parse(cli({"graph", "diff", a.string(), b.string(), "--json"}).out),
            (json{{"extended_nodes", 1}, {"extended_edges", 0}, {"suggestion_adoptions", 1}}));
  EXPECT_EQ(cli({"graph", "diff", b.string(), a.string()}).out, "0 nodes, 0 edges\n");

  rl::util::write_file_atomic(dir.path / "bad.json", "{\"format\":1}");
  auto bad = cli({"graph", "diff", a.string(), (dir.path / "bad.json").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: MalformedGraphDocument", 0), 0u) << bad.err;
}

TEST(Cli, KnowledgeBaseBuildAndQuery) {
  TempDir dir("cli");
  std::string records = (rl::testing::fixture_dir() / "corpus" / "records.jsonl").string();
  fs::path kb1 = dir.path / "kb1.jsonl";
  fs::path kb2 = dir.path / "kb2.jsonl";
  auto built = cli({"kb", "build", "--in", records, "--out", kb1.string()});
  ASSERT_EQ(built.code, 0) << built.err;
  ASSERT_EQ(cli({"kb", "build", "--in", records, "--out", kb2.string(), "--threshold", "0.9"}).code, 0);
  EXPECT_EQ(rl::util::read_text_file(kb1), rl::util::read_text_file(kb2));

  auto base = rl::kb::load_kb(kb1.string());
  EXPECT_NE(built.out.find(std::to_string(base.entries.size()) + " entries"), std::string::npos);

  auto q = cli({"kb", "query", "--kb", kb1.string(), "how do I store items in a list?"});
  ASSERT_EQ(q.code, 0) << q.err;
  auto expected = rl::kb::retrieve(base, "how do I store items in a list?");
  std::istringstream lines(q.out);
  std::size_t i = 0;
  for (std::string line; std::getline(lines, line); ++i) {
    ASSERT_LT(i, expected.size());
    EXPECT_EQ(line.substr(0, line.find('\t')), expected[i].entry->id);
  }
  EXPECT_EQ(i, std::min<std::size_t>(3, base.entries.size()));
  EXPECT_EQ(cli({"kb", "query", "--kb", kb1.string(), "--k", "1", "list"}).out.find('\n') + 1,
            cli({"kb", "query", "--kb", kb1.string(), "--k", "1", "list"}).out.size());
  EXPECT_EQ(cli({"kb", "query", "--kb", kb1.string(), "--k", "0", "list"}).code, 2);
}

TEST(Cli, ChatScriptReachesResolved) {
  auto r = cli({"chat", "--script", script("loop_demo.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(ends_with(r.out, "session state: Resolved\n"));
  EXPECT_EQ(states_of(r.out), (std::vector<std::string>{"VisualScaffold", "AwaitResponse", "TextualScaffold",
                                                        "AwaitResponse", "Resolved"}));
  EXPECT_NE(r.out.find("ct total " +
                       std::to_string(rl::ct::score_ct(rl::testing::forest_of("soccer_min")).total) + "/21"),
            std::string::npos);
  EXPECT_NE(r.out.find("proposal 2: "), std::string::npos);
  // Same script, same bytes.
  EXPECT_EQ(cli({"chat", "--script", script("loop_demo.txt").string()}).out, r.out);
  EXPECT_EQ(r.out, rl::util::read_text_file(rl::testing::fixture_dir() / "golden" / "loop_demo.out"));
}

TEST(Cli, ChatScriptDontKnowBranch) {
  auto r = cli({"chat", "--script", script("dont_know_demo.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(states_of(r.out),
            (std::vector<std::string>{"VisualScaffold", "AwaitResponse", "TextualScaffold", "Resolved"}));
  EXPECT_NE(r.out.find("turn 3 [dont_know]"), std::string::npos);
}

TEST(Cli, ChatScriptErrors) {
  auto parse_error_at = [](const std::string& text) {
    try {
      rl::cli::parse_chat_script(text);
    } catch (const rl::Error& e) {
      EXPECT_EQ(e.code(), rl::Errc::InvalidArgument);
      return e.location();
    }
    return std::string("no error");
  };
  EXPECT_EQ(parse_error_at("# c\n\nload x\ndance\n"), "line 4");
  EXPECT_EQ(parse_error_at("say\n"), "line 1");
  EXPECT_EQ(parse_error_at("got_it now\n"), "line 1");
  auto cmds = rl::cli::parse_chat_script("  say  hello there \r\ngot_it");
  ASSERT_EQ(cmds.size(), 2u);
  EXPECT_EQ(cmds[0].argument, "hello there");
  EXPECT_EQ(cmds[1].line, 2u);

  TempDir dir("cli");
  fs::path s = dir.path / "early.txt";
  rl::util::write_file_atomic(s, "say hi\n");
  auto early = cli({"chat", "--script", s.string()});
  EXPECT_EQ(early.code, 1);
  EXPECT_NE(early.err.find("InvalidArgument"), std::string::npos);
  EXPECT_EQ(cli({"chat", "--script", (dir.path / "missing.txt").string()}).code, 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"analyze"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  auto missing = cli({"analyze", "/nonexistent/x.sb3"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("error: IoError", 0), 0u) << missing.err;
  auto corrupt = cli({"analyze", (rl::testing::fixture_dir() / "no_project.zip").string()});
  EXPECT_EQ(corrupt.code, 1);
  EXPECT_EQ(corrupt.err.rfind("error: MalformedArchive", 0), 0u) << corrupt.err;
}

TEST(Cli, ServeConfigPrecedence) {
  TempDir dir("cli");
  fs::path file = dir.path / "cfg.json";
  rl::util::write_file_atomic(file, R"({"port": 7001, "host": "0.0.0.0", "max_loops": 2})");
  ::setenv("REMIXLAB_HOST", "10.0.0.1", 1);
  ::setenv("REMIXLAB_RETRIEVAL_K", "5", 1);
  auto r = cli({"serve", "--print-config", "--config", file.string(), "--port", "7002"});
  ::unsetenv("REMIXLAB_HOST");
  ::unsetenv("REMIXLAB_RETRIEVAL_K");
  ASSERT_EQ(r.code, 0) << r.err;
  json c = json::parse(r.out);
  EXPECT_EQ(c["port"], 7002);
  EXPECT_EQ(c["host"], "10.0.0.1");
  EXPECT_EQ(c["max_loops"], 2);
  EXPECT_EQ(c["retrieval_k"], 5);
  EXPECT_EQ(c["max_upload_bytes"], 32 * 1024 * 1024);

  rl::util::write_file_atomic(file, R"({"colour": "red"})");
  auto bad = cli({"serve", "--print-config", "--config", file.string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: ConfigError", 0), 0u) << bad.err;
}
