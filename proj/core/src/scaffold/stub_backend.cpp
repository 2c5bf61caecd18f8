#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "remixlab/graph/adjacency.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/scaffold/judge.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::scaffold {
namespace {

using nlohmann::json;

std::string var(const PromptContext& p, const char* name) {
  auto it = p.vars.find(name);
  return it == p.vars.end() ? std::string() : it->second;
}

const std::set<std::string, std::less<>> kStopwords{
    "the", "and", "how", "does", "what", "why", "when", "where", "which", "who",
    "this", "that", "with", "for", "are", "was", "can", "you", "your", "its",
    "get", "work", "works", "make", "makes", "do", "is", "it", "my", "of", "to"};

bool related(const std::string& a, const std::string& b) {
  if (a == b) return true;
  const std::string& shorter = a.size() < b.size() ? a : b;
  const std::string& longer = a.size() < b.size() ? b : a;
  return shorter.size() >= 4 && longer.compare(0, shorter.size(), shorter) == 0;
}

std::string visual_target(const PromptContext& p) {
  std::vector<std::string> question;
  for (auto& t : util::word_tokens(var(p, "question"))) {
    if (t.size() >= 3 && !kStopwords.count(t)) question.push_back(t);
  }
  struct Line {
    std::string id, sprite, text;
    int depth = 0;
  };
  std::vector<Line> lines;
  std::istringstream in(var(p, "blocks"));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cols;
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      std::size_t tab = line.find('\t', pos);
      if (tab == std::string::npos) break;
      cols.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (cols.size() != 3) continue;
    lines.push_back({cols[0], cols[1], line.substr(pos), std::atoi(cols[2].c_str())});
  }
  const Line* best = nullptr;
  int best_score = -1;
  for (const auto& l : lines) {
    auto tokens = util::word_tokens(l.text);
    int score = 0;
    for (const auto& q : question) {
      if (std::any_of(tokens.begin(), tokens.end(),
                      [&](const std::string& t) { return related(q, t); })) {
        ++score;
      }
    }
    if (score > best_score || (score == best_score && best && l.depth > best->depth)) {
      best = &l;
      best_score = score;
    }
  }
  json out;
  if (!best) {
    out = {{"target", ""}, {"summary", "This project has no blocks to look at yet."}};
  } else {
    out = {{"target", best->id},
           {"summary", "Look at the block \"" + best->text + "\" in " + best->sprite +
                           ". The blocks above it decide when it runs."}};
  }
  return out.dump();
}

std::string thinking_question(const PromptContext& p) {
  std::string condition = var(p, "condition");
  std::string loop = var(p, "loop");
  std::string target = var(p, "target_text");
  if (!condition.empty()) return "Is the condition `" + condition + "` necessary?";
  if (!loop.empty()) {
    return "What would happen if `" + target + "` were not inside `" + loop + "`?";
  }
  return "Why does the script need `" + target + "`?";
}

std::string textual_hint(const PromptContext& p) {
  std::string out = "Let's go through the blocks from the top.\n";
  out += var(p, "highlight");
  if (!out.ends_with('\n')) out += '\n';
  out += "The block `" + var(p, "target_text") +
         "` only runs when every block above it lets it run.\n";
  std::string knowledge = var(p, "knowledge");
  if (!knowledge.empty() && knowledge != "(none)") {
    out += "Ideas from the community:\n" + knowledge;
    if (!out.ends_with('\n')) out += '\n';
  }
  return out;
}

std::string judge(const PromptContext& p) {
  std::vector<std::string> concepts;
  for (auto part : util::whitespace_words(var(p, "concepts"))) {
    std::string c(part);
    if (!c.empty() && c.back() == ',') c.pop_back();
    if (!c.empty()) concepts.push_back(c);
  }
  auto j = fallback_judge(var(p, "answer"), concepts);
  return json{{"label", std::string(to_string(j.label))}, {"rationale", j.rationale}}.dump();
}

std::string image_prompts(const PromptContext& p) {
  std::string subject = var(p, "subject");
  if (subject.empty()) subject = var(p, "utterance");
  std::string project = var(p, "project");
  std::string canvas = var(p, "canvas");
  std::string characters = var(p, "characters");
  std::string scene = canvas.empty() ? project : canvas;
  std::string with = characters.empty() ? "" : " with " + characters;
  json proposals = json::array();
  for (auto [style, detail] : {std::pair{"glowing", "that glows and leaves a short trail"},
                               std::pair{"striped", "with bold stripes and a bouncy shape"}}) {
    proposals.push_back(
        {{"label", std::string(style) + " " + subject},
         {"description", "A " + std::string(style) + " " + subject + " " + detail +
                             ", made for the " + scene + " scene" + with + "."},
         {"image_prompt", "a " + std::string(style) + " " + subject + " " + detail +
                              ", game piece for the Scratch project " + project + with}});
  }
  return json{{"proposals", proposals}}.dump();
}

std::string edge_suggest(const PromptContext& p) {
  json out{{"edges", json::array()}};
  graph::VisualGraph g;
  try {
    g = graph::deserialize_graph(var(p, "graph"));
  } catch (...) {
    return out.dump();
  }
  NodeId fresh(var(p, "node_id"));
  const auto* node = g.find_node(fresh);
  if (!node) return out.dump();
  for (const auto& [id, other] : g.nodes) {
    if (id == fresh) continue;
    if (auto r = graph::relation_for(other.kind, node->kind)) {
      out["edges"].push_back({{"from", id.str()}, {"to", fresh.str()},
                              {"relation", std::string(graph::to_string(*r))}});
    }
    if (auto r = graph::relation_for(node->kind, other.kind)) {
      out["edges"].push_back({{"from", fresh.str()}, {"to", id.str()},
                              {"relation", std::string(graph::to_string(*r))}});
    }
  }
  return out.dump();
}

}  // namespace

std::string StubBackend::generate(Role role, const PromptContext& prompt) {
  switch (role) {
    case Role::VisualTarget: return visual_target(prompt);
    case Role::ThinkingQuestion: return thinking_question(prompt);
    case Role::TextualHint: return textual_hint(prompt);
    case Role::Judge: return judge(prompt);
    case Role::ImagePrompts: return image_prompts(prompt);
    case Role::EdgeSuggest: return edge_suggest(prompt);
  }
  return {};
}

}  // namespace remixlab::scaffold
