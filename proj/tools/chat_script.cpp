#include "chat_script.hpp"

#include <algorithm>
#include <iomanip>
#include <memory>

#include "remixlab/ct/analyzer.hpp"
#include "remixlab/error.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/kb/kb_io.hpp"
#include "remixlab/remix/asset_store.hpp"
#include "remixlab/remix/image.hpp"
#include "remixlab/remix/remix.hpp"
#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/sb3/project.hpp"
#include "remixlab/scaffold/engine.hpp"
#include "remixlab/scaffold/session_io.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::cli {
namespace {

const std::vector<std::string>& verbs_with_argument() {
  static const std::vector<std::string> v{"load", "say", "remix"};
  return v;
}

const std::vector<std::string>& bare_verbs() {
  static const std::vector<std::string> v{"analyze", "graph", "got_it", "dont_know", "transcript"};
  return v;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string indent(const std::string& text, const std::string& prefix) {
  std::string out;
  for (char c : text) {
    out += c;
    if (c == '\n') out += prefix;
  }
  while (!out.empty() && (out.back() == ' ' || out.back() == '\n')) out.pop_back();
  return out;
}

struct Loaded {
  std::string name;
  sb3::BlockForest forest;
  graph::VisualGraph reference;
  scaffold::DialogueSession session;
};

}  // namespace

std::vector<ScriptCommand> parse_chat_script(std::string_view text) {
  std::vector<ScriptCommand> commands;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto space = line.find_first_of(" \t");
    ScriptCommand cmd{line_no, line.substr(0, space), space == std::string::npos ? "" : trim(line.substr(space))};
    std::string where = "line " + std::to_string(line_no);
    if (contains(verbs_with_argument(), cmd.verb)) {
      if (cmd.argument.empty()) throw Error(Errc::InvalidArgument, cmd.verb + " needs an argument", where);
    } else if (contains(bare_verbs(), cmd.verb)) {
      if (!cmd.argument.empty()) throw Error(Errc::InvalidArgument, cmd.verb + " takes no argument", where);
    } else {
      throw Error(Errc::InvalidArgument, "unknown command " + cmd.verb, where);
    }
    commands.push_back(std::move(cmd));
  }
  return commands;
}

void run_chat_script(const std::filesystem::path& script, const ChatScriptOptions& options,
                     std::ostream& out) {
  auto commands = parse_chat_script(util::read_text_file(script));
  std::filesystem::path base = script.parent_path();

  std::optional<kb::KnowledgeBase> kb;
  if (options.kb_path) kb = kb::load_kb(options.kb_path->string());
  scaffold::StubBackend text_backend;
  scaffold::Moderator moderator;
  scaffold::EngineOptions engine_options;
  engine_options.max_loops = options.max_loops;
  std::unique_ptr<scaffold::ScaffoldEngine> engine;
  std::unique_ptr<Loaded> project;

  auto need_project = [&](const ScriptCommand& c) -> Loaded& {
    if (!project) {
      throw Error(Errc::InvalidArgument, c.verb + " needs a loaded project",
                  "line " + std::to_string(c.line));
    }
    return *project;
  };

  for (const auto& c : commands) {
    if (c.verb == "load") {
      std::filesystem::path path = base / c.argument;
      auto p = std::make_unique<Loaded>();
      p->name = path.stem().string();
      p->forest = sb3::build_block_tree(sb3::load_project_file(path));
      p->reference = graph::extract_reference_graph(p->forest);
      engine_options.project_name = p->name;
      engine = std::make_unique<scaffold::ScaffoldEngine>(text_backend, moderator,
                                                          kb ? &*kb : nullptr, nullptr, engine_options);
      p->session = engine->start_session(p->forest, {}, "script", path.filename().string());
      out << "loaded " << p->name << ": " << p->forest.sprites.size() << " sprites, "
          << p->forest.script_count() << " scripts, " << p->forest.node_count() << " blocks\n";
      project = std::move(p);
    } else if (c.verb == "analyze") {
      auto report = ct::score_ct(need_project(c).forest);
      out << "ct total " << report.total << "/21\n";
      for (auto d : ct::kDimensions) {
        out << "  " << std::left << std::setw(20) << ct::to_string(d) << report.score(d) << "\n";
      }
    } else if (c.verb == "graph") {
      const auto& g = need_project(c).reference;
      out << "reference graph: " << g.canvases.size() << " canvases, " << g.nodes.size() << " nodes, "
          << g.edges.size() << " edges\n";
    } else if (c.verb == "say" || c.verb == "got_it" || c.verb == "dont_know") {
      Loaded& p = need_project(c);
      scaffold::TurnInput input = c.verb == "say"      ? scaffold::TurnInput::utterance(c.argument)
                                  : c.verb == "got_it" ? scaffold::TurnInput::got_it()
                                                       : scaffold::TurnInput::dont_know();
      auto result = engine->handle_turn(p.session, p.forest, input);
      p.session = std::move(result.session);
      out << "> " << c.verb << (c.argument.empty() ? "" : " " + c.argument) << "\n";
      out << "< " << scaffold::to_string(result.response.kind) << ": " << indent(result.response.text, "  ") << "\n";
      out << "  state " << scaffold::to_string(p.session.state) << "\n";
    } else if (c.verb == "remix") {
      Loaded& p = need_project(c);
      if (p.reference.canvases.empty()) {
        throw Error(Errc::InvalidArgument, "project has no canvas to remix", "line " + std::to_string(c.line));
      }
      remix::RemixRequest request{"script", c.argument, p.reference.canvases.front().id, p.name};
      auto proposals = remix::derive_image_prompts(request, p.reference, text_backend, moderator);
      out << "remix \"" << c.argument << "\" on " << p.reference.canvases.front().title << "\n";
      for (std::size_t i = 0; i < proposals.size(); ++i) {
        auto prop = proposals[i];
        remix::attach_negative_terms(prop);
        out << "  proposal " << i + 1 << ": " << prop.label << "\n"
            << "    image prompt: " << indent(prop.image_prompt, "      ") << "\n"
            << "    negative: " << prop.negative_prompt << "\n"
            << "    asset: " << remix::AssetStore::ref_for(remix::prompt_hash(prop)) << "\n";
      }
    } else if (c.verb == "transcript") {
      out << scaffold::render_transcript(need_project(c).session);
    }
  }
  if (!project) throw Error(Errc::InvalidArgument, "script never loads a project", script.string());
  out << "--- transcript ---\n" << scaffold::render_transcript(project->session);
}

}  // namespace remixlab::cli
