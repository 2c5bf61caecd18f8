#include "remixlab/scaffold/session_io.hpp"

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/graph/graph_io.hpp"

namespace remixlab::scaffold {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& at, const std::string& message) {
  throw Error(Errc::MalformedSessionDocument, message, at.empty() ? "/" : at);
}

const json& field(const json& j, const char* key, const std::string& at) {
  if (!j.is_object()) bad(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(at + "/" + key, "missing");
  return *it;
}

std::string str(const json& j, const char* key, const std::string& at) {
  const json& v = field(j, key, at);
  if (!v.is_string()) bad(at + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> opt_str(const json& j, const char* key, const std::string& at) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad(at + "/" + key, "expected a string");
  return it->get<std::string>();
}

template <typename E, typename F>
E enum_field(const json& j, const char* key, const std::string& at, F parse) {
  std::string s = str(j, key, at);
  auto v = parse(s);
  if (!v) bad(at + "/" + key, "unknown value \"" + s + "\"");
  return *v;
}

unsigned uint_field(const json& j, const char* key, const std::string& at) {
  const json& v = field(j, key, at);
  if (!v.is_number_unsigned()) bad(at + "/" + key, "expected a non-negative integer");
  return v.get<unsigned>();
}

const json& array_field(const json& j, const char* key, const std::string& at) {
  const json& v = field(j, key, at);
  if (!v.is_array()) bad(at + "/" + key, "expected an array");
  return v;
}

graph::VisualGraph graph_field(const json& j, const char* key, const std::string& at) {
  try {
    return graph::graph_from_json(field(j, key, at));
  } catch (const Error& e) {
    if (e.code() != Errc::MalformedGraphDocument) throw;
    bad(at + "/" + key + e.location(), e.detail());
  }
}

}  // namespace

json highlight_to_json(const BlockGraphHighlight& h) {
  json blocks = json::array();
  for (const auto& b : h.generated_block) blocks.push_back(b.str());
  json edges = json::array();
  for (const auto& e : h.edges) {
    edges.push_back({{"from", e.from.str()}, {"to", e.to.str()},
                     {"kind", std::string(to_string(e.kind))}});
  }
  return {{"target", h.target.str()}, {"sprite", h.sprite}, {"generated_block", blocks},
          {"edges", edges}, {"summary", h.summary}};
}

BlockGraphHighlight highlight_from_json(const json& j, const std::string& at) {
  BlockGraphHighlight h;
  h.target = BlockId(str(j, "target", at));
  h.sprite = str(j, "sprite", at);
  h.summary = str(j, "summary", at);
  const json& blocks = array_field(j, "generated_block", at);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!blocks[i].is_string()) bad(at + "/generated_block/" + std::to_string(i), "expected a string");
    h.generated_block.emplace_back(blocks[i].get<std::string>());
  }
  const json& edges = array_field(j, "edges", at);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string p = at + "/edges/" + std::to_string(i);
    h.edges.push_back({BlockId(str(edges[i], "from", p)), BlockId(str(edges[i], "to", p)),
                       enum_field<DependencyKind>(edges[i], "kind", p,
                                                  dependency_kind_from_string)});
  }
  return h;
}

json response_to_json(const ScaffoldResponse& r) {
  json j{{"kind", std::string(to_string(r.kind))}, {"text", r.text}};
  j["highlight"] = r.highlight ? highlight_to_json(*r.highlight) : json(nullptr);
  j["judgment"] = r.judgment ? json{{"label", std::string(to_string(r.judgment->label))},
                                    {"rationale", r.judgment->rationale}}
                             : json(nullptr);
  json knowledge = json::array();
  for (const auto& c : r.knowledge) {
    knowledge.push_back({{"marker", c.marker}, {"entry_id", c.entry_id}, {"text", c.text},
                         {"score", c.score}});
  }
  j["knowledge"] = std::move(knowledge);
  j["blocked"] = r.blocked ? json(std::string(to_string(*r.blocked))) : json(nullptr);
  return j;
}

ScaffoldResponse response_from_json(const json& j, const std::string& at) {
  ScaffoldResponse r;
  r.kind = enum_field<ResponseKind>(j, "kind", at, response_kind_from_string);
  r.text = str(j, "text", at);
  if (auto it = j.find("highlight"); it != j.end() && !it->is_null()) {
    r.highlight = highlight_from_json(*it, at + "/highlight");
  }
  if (auto it = j.find("judgment"); it != j.end() && !it->is_null()) {
    r.judgment = ResponseJudgment{
        enum_field<JudgmentLabel>(*it, "label", at + "/judgment", judgment_label_from_string),
        str(*it, "rationale", at + "/judgment")};
  }
  if (j.contains("knowledge")) {
    const json& ks = array_field(j, "knowledge", at);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::string p = at + "/knowledge/" + std::to_string(i);
      const json& score = field(ks[i], "score", p);
      if (!score.is_number()) bad(p + "/score", "expected a number");
      r.knowledge.push_back({str(ks[i], "marker", p), str(ks[i], "entry_id", p),
                             str(ks[i], "text", p), score.get<double>()});
    }
  }
  if (auto b = opt_str(j, "blocked", at)) {
    auto c = moderation_category_from_string(*b);
    if (!c) bad(at + "/blocked", "unknown category \"" + *b + "\"");
    r.blocked = c;
  }
  return r;
}

json turn_to_json(const Turn& t) {
  json path = json::array();
  for (auto st : t.path) path.push_back(std::string(to_string(st)));
  return {{"index", t.index},
          {"input", {{"kind", std::string(to_string(t.input.kind))}, {"text", t.input.text}}},
          {"path", path},
          {"response", response_to_json(t.response)}};
}

json dialogue_to_json(const DialogueSession& s) {
  json transcript = json::array();
  for (const auto& t : s.transcript) transcript.push_back(turn_to_json(t));
  return {{"session_id", s.session_id},
          {"project_ref", s.project_ref},
          {"state", std::string(to_string(s.state))},
          {"pending_question", s.pending_question ? json(*s.pending_question) : json(nullptr)},
          {"thinking_question", s.thinking_question ? json(*s.thinking_question) : json(nullptr)},
          {"highlight", s.highlight ? highlight_to_json(*s.highlight) : json(nullptr)},
          {"loop_count", s.loop_count},
          {"max_loops", s.max_loops},
          {"learner_graph", graph::graph_to_json(s.learner_graph)},
          {"reference_graph", graph::graph_to_json(s.reference_graph)},
          {"transcript", transcript}};
}

DialogueSession dialogue_from_json(const json& j, const std::string& at) {
  DialogueSession s;
  s.session_id = str(j, "session_id", at);
  s.project_ref = str(j, "project_ref", at);
  s.state = enum_field<DialogueState>(j, "state", at, dialogue_state_from_string);
  s.pending_question = opt_str(j, "pending_question", at);
  s.thinking_question = opt_str(j, "thinking_question", at);
  if (auto it = j.find("highlight"); it != j.end() && !it->is_null()) {
    s.highlight = highlight_from_json(*it, at + "/highlight");
  }
  s.loop_count = uint_field(j, "loop_count", at);
  s.max_loops = uint_field(j, "max_loops", at);
  if (s.loop_count > s.max_loops) bad(at + "/loop_count", "exceeds max_loops");
  s.learner_graph = graph_field(j, "learner_graph", at);
  s.reference_graph = graph_field(j, "reference_graph", at);
  const json& transcript = array_field(j, "transcript", at);
  for (std::size_t i = 0; i < transcript.size(); ++i) {
    std::string p = at + "/transcript/" + std::to_string(i);
    const json& tj = transcript[i];
    Turn t;
    t.index = uint_field(tj, "index", p);
    if (t.index != i) bad(p + "/index", "turn indices must count up from 0");
    const json& in = field(tj, "input", p);
    t.input.kind = enum_field<InputKind>(in, "kind", p + "/input", input_kind_from_string);
    t.input.text = str(in, "text", p + "/input");
    const json& path = array_field(tj, "path", p);
    for (std::size_t k = 0; k < path.size(); ++k) {
      auto st = path[k].is_string() ? dialogue_state_from_string(path[k].get<std::string>())
                                    : std::nullopt;
      if (!st) bad(p + "/path/" + std::to_string(k), "unknown state");
      t.path.push_back(*st);
    }
    t.response = response_from_json(field(tj, "response", p), p + "/response");
    s.transcript.push_back(std::move(t));
  }
  return s;
}

std::string render_transcript(const DialogueSession& s) {
  std::string out;
  for (const auto& t : s.transcript) {
    out += "turn " + std::to_string(t.index + 1) + " [" + std::string(to_string(t.input.kind)) + "]";
    if (!t.input.text.empty()) out += " " + t.input.text;
    out += "\n  ";
    for (std::size_t i = 0; i < t.path.size(); ++i) {
      if (i) out += " -> ";
      out += to_string(t.path[i]);
    }
    out += "\n  " + std::string(to_string(t.response.kind));
    if (t.response.judgment) out += " (" + std::string(to_string(t.response.judgment->label)) + ")";
    out += ": ";
    std::string text = t.response.text;
    while (!text.empty() && text.back() == '\n') text.pop_back();
    for (char c : text) {
      out += c;
      if (c == '\n') out += "    ";
    }
    out += "\n";
    if (t.response.highlight) {
      out += "  blocks:";
      for (const auto& b : t.response.highlight->generated_block) out += " " + b.str();
      out += "\n";
    }
  }
  out += "session state: " + std::string(to_string(s.state)) + "\n";
  return out;
}

}  // namespace remixlab::scaffold
