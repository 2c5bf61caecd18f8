#include "cli.hpp"

#include <CLI11.hpp>
#include <csignal>
#include <cstdio>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <pthread.h>
#include <thread>

#include "chat_script.hpp"
#include "remixlab/ct/analyzer.hpp"
#include "remixlab/ct/corpus.hpp"
#include "remixlab/error.hpp"
#include "remixlab/graph/diff.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/kb/kb_io.hpp"
#include "remixlab/kb/knowledge_base.hpp"
#include "remixlab/kb/records.hpp"
#include "remixlab/remix/image.hpp"
#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/sb3/project.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/service/config.hpp"
#include "remixlab/service/http_server.hpp"
#include "remixlab/service/service.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

sb3::BlockForest forest_of(const fs::path& path) {
  return sb3::build_block_tree(sb3::load_project_file(path));
}

void emit(std::ostream& out, const std::optional<fs::path>& file, const std::string& text) {
  if (file) {
    util::write_file_atomic(*file, text);
  } else {
    out << text;
  }
}

json config_to_json(const service::ServiceConfig& c) {
  return {{"host", c.host},
          {"port", c.port},
          {"state_dir", c.state_dir.string()},
          {"kb", c.kb_path ? json(c.kb_path->string()) : json(nullptr)},
          {"session_ttl_s", c.session_ttl_s},
          {"sweep_interval_s", c.sweep_interval_s},
          {"max_upload_bytes", c.max_upload_bytes},
          {"cors_origin", c.cors_origin},
          {"max_loops", c.max_loops},
          {"retrieval_k", c.retrieval_k},
          {"worker_threads", c.worker_threads}};
}

// Blocks SIGINT and SIGTERM in every thread started afterwards and stops
// the server from a dedicated waiter once one arrives.
void serve_until_signal(service::HttpServer& server) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread waiter([&server, set] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  waiter.detach();
  server.listen();
}

struct Options {
  std::string analyze_path;
  std::optional<std::string> rubric;
  std::string stats_dir;
  std::optional<std::string> stats_out;
  unsigned threads = 0;
  std::string kb_in;
  std::string kb_out;
  double threshold = kb::kDefaultThreshold;
  std::string kb_file;
  std::size_t k = 3;
  std::string question;
  std::string extract_path;
  std::optional<std::string> extract_out;
  std::string diff_a;
  std::string diff_b;
  bool diff_json = false;
  std::optional<std::string> config_file;
  std::optional<int> port;
  std::optional<std::string> host;
  std::optional<std::string> state_dir;
  std::optional<std::string> serve_kb;
  bool print_config = false;
  std::string script;
  std::optional<std::string> chat_kb;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scratch project analysis, scaffolding and remix tools", "remixlab"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Print the CT report of a project as JSON");
  analyze->add_option("project", o.analyze_path, ".sb3 archive or project.json")->required();
  analyze->add_option("--rubric", o.rubric, "Rubric file replacing the built-in one");

  auto* stats = app.add_subcommand("stats", "Block category table for every project in a directory");
  stats->add_option("dir", o.stats_dir)->required();
  stats->add_option("--out", o.stats_out, "Write the table here instead of stdout");
  stats->add_option("--threads", o.threads, "Worker threads, 0 = all cores");

  auto* kb_cmd = app.add_subcommand("kb", "Knowledge base lifecycle");
  kb_cmd->require_subcommand(1);
  auto* kb_build = kb_cmd->add_subcommand("build", "Build a knowledge base from a records file");
  kb_build->add_option("--in", o.kb_in, "Line-delimited corpus records")->required();
  kb_build->add_option("--out", o.kb_out, "Knowledge base file to write")->required();
  kb_build->add_option("--threshold", o.threshold, "Merge threshold (cosine)")
      ->check(CLI::Range(0.0, 1.0));
  auto* kb_query = kb_cmd->add_subcommand("query", "Top-k entries for a question");
  kb_query->add_option("--kb", o.kb_file)->required();
  kb_query->add_option("--k", o.k)->check(CLI::PositiveNumber);
  kb_query->add_option("question", o.question)->required();

  auto* graph_cmd = app.add_subcommand("graph", "Visual graph documents");
  graph_cmd->require_subcommand(1);
  auto* extract = graph_cmd->add_subcommand("extract", "Reference graph of a project");
  extract->add_option("project", o.extract_path)->required();
  extract->add_option("--out", o.extract_out);
  auto* diff = graph_cmd->add_subcommand("diff", "Extended nodes and edges of b relative to a");
  diff->add_option("original", o.diff_a)->required();
  diff->add_option("remixed", o.diff_b)->required();
  diff->add_flag("--json", o.diff_json, "Print all remix metrics as JSON");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", o.config_file, "JSON config file");
  serve->add_option("--port", o.port)->check(CLI::Range(0, 65535));
  serve->add_option("--host", o.host);
  serve->add_option("--state-dir", o.state_dir);
  serve->add_option("--kb", o.serve_kb);
  serve->add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");

  auto* chat = app.add_subcommand("chat", "Run a scripted offline dialogue with stub backends");
  chat->add_option("--script", o.script)->required();
  chat->add_option("--kb", o.chat_kb);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      auto forest = forest_of(o.analyze_path);
      auto report = o.rubric ? ct::score_ct(forest, ct::Rubric::parse(util::read_text_file(*o.rubric)))
                             : ct::score_ct(forest);
      out << ct::report_to_json(report).dump(2) << "\n";
    } else if (*stats) {
      auto paths = ct::list_projects(o.stats_dir);
      auto scan = ct::corpus_scan(paths, ct::Rubric::builtin(), o.threads);
      emit(out, o.stats_out ? std::optional<fs::path>(*o.stats_out) : std::nullopt,
           ct::format_stats_table(scan));
    } else if (*kb_build) {
      kb::BuildOptions options;
      options.threshold = o.threshold;
      auto records = kb::load_records(o.kb_in);
      auto base = kb::build_knowledge_base(records, options);
      kb::save_kb(base, o.kb_out);
      out << base.entries.size() << " entries from " << records.size() << " records\n";
    } else if (*kb_query) {
      auto base = kb::load_kb(o.kb_file);
      for (const auto& r : kb::retrieve(base, o.question, o.k)) {
        out << r.entry->id << "\t" << std::fixed << std::setprecision(4) << r.score << "\t"
            << r.entry->text << "\n";
      }
    } else if (*extract) {
      auto g = graph::extract_reference_graph(forest_of(o.extract_path));
      emit(out, o.extract_out ? std::optional<fs::path>(*o.extract_out) : std::nullopt,
           graph::serialize_graph(g));
    } else if (*diff) {
      auto a = graph::deserialize_graph(util::read_text_file(o.diff_a));
      auto b = graph::deserialize_graph(util::read_text_file(o.diff_b));
      auto m = graph::graph_diff(a, b);
      if (o.diff_json) {
        out << json{{"extended_nodes", m.extended_nodes},
                    {"extended_edges", m.extended_edges},
                    {"suggestion_adoptions", m.suggestion_adoptions}}
                   .dump()
            << "\n";
      } else {
        out << m.extended_nodes << " nodes, " << m.extended_edges << " edges\n";
      }
    } else if (*serve) {
      service::ConfigLayer flags;
      if (o.port) flags["port"] = std::to_string(*o.port);
      if (o.host) flags["host"] = *o.host;
      if (o.state_dir) flags["state_dir"] = *o.state_dir;
      if (o.serve_kb) flags["kb"] = *o.serve_kb;
      service::ConfigLayer file = o.config_file ? service::file_layer(*o.config_file) : service::ConfigLayer{};
      auto config = service::resolve_config(file, service::env_layer(), flags);
      if (o.print_config) {
        out << config_to_json(config).dump(2) << "\n";
        return 0;
      }
      auto text = scaffold::backend_from_env();
      auto image = remix::image_backend_from_env();
      service::ServiceDeps deps;
      deps.text = text.get();
      deps.judge = scaffold::chat_config_from_env() ? text.get() : nullptr;
      deps.image = image.get();
      if (config.kb_path) {
        deps.kb = std::make_shared<const kb::KnowledgeBase>(kb::load_kb(config.kb_path->string()));
      }
      service::Service svc(config, std::move(deps));
      service::HttpServer server(svc);
      int port = server.bind(config.host, config.port);
      err << "remixlab listening on http://" << config.host << ":" << port << " (text backend "
          << text->name() << ", image backend " << image->name() << ")" << std::endl;
      serve_until_signal(server);
    } else if (*chat) {
      ChatScriptOptions options;
      if (o.chat_kb) options.kb_path = *o.chat_kb;
      run_chat_script(o.script, options, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace remixlab::cli
