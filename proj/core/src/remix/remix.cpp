#include "remixlab/remix/remix.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"
#include "remixlab/graph/adjacency.hpp"
#include "remixlab/graph/graph_io.hpp"
#include "remixlab/scaffold/templates.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::remix {
namespace {

using nlohmann::json;
using scaffold::Role;

// Phrases after which the requested thing starts.
constexpr std::string_view kTriggers[] = {
    "i want to add", "i would like to add", "i'd like to add", "can i add",
    "i want to make", "i want to have", "i want", "i would like", "i'd like",
    "can i have", "can we have", "give me", "let's add", "add", "make",
    "create", "draw",
};

constexpr std::string_view kArticles[] = {
    "a", "an", "the", "some", "my", "another", "new", "more",
};

// Words that end the subject phrase.
constexpr std::string_view kStops[] = {
    "in", "on", "to", "for", "that", "which", "who", "with", "into", "at",
    "so", "because", "and", "please", "inside", "from", "like",
};

constexpr std::size_t kMaxSubjectWords = 6;
constexpr std::size_t kMaxContextNodes = 20;

template <std::size_t N>
bool one_of(const std::string_view (&set)[N], std::string_view w) {
  return std::find(std::begin(set), std::end(set), w) != std::end(set);
}

// Lowercased words, punctuation other than apostrophes removed.
std::vector<std::string> plain_words(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view raw : util::whitespace_words(text)) {
    std::string w;
    for (char c : util::to_lower(raw)) {
      auto u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || u >= 0x80 || c == '\'' || c == '-') w += c;
    }
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

struct Context {
  std::string scene;
  std::string characters;
  std::string nodes;
};

Context project_context(const RemixRequest& request,
                        const graph::VisualGraph& g) {
  Context ctx;
  if (!request.target_canvas.str().empty()) {
    const graph::Canvas* canvas = g.find_canvas(request.target_canvas);
    if (!canvas) {
      throw Error(Errc::UnknownId, "canvas is not in the graph",
                  request.target_canvas.str());
    }
    ctx.scene = canvas->title;
  }
  if (ctx.scene.empty()) ctx.scene = request.project_name;
  std::vector<std::string> characters;
  std::vector<std::string> others;
  for (const auto& [id, node] : g.nodes) {
    if (node.kind == graph::NodeKind::Character) {
      if (std::find(characters.begin(), characters.end(), node.label) ==
          characters.end()) {
        characters.push_back(node.label);
      }
    } else if (node.canvas == request.target_canvas &&
               others.size() < kMaxContextNodes) {
      others.push_back(node.label);
    }
  }
  ctx.characters = util::join(characters, ", ");
  ctx.nodes = util::join(others, "; ");
  return ctx;
}

std::string compose_prompt(std::string_view body, const Context& ctx) {
  std::string preamble = util::trim(scaffold::prompt_template("image_preamble"));
  std::string out = preamble + "\n" + util::trim(body);
  if (!ctx.scene.empty()) out += "\nScene: " + ctx.scene + ".";
  if (!ctx.characters.empty()) out += "\nCharacters: " + ctx.characters + ".";
  return out;
}

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return {};
  return util::trim(it->get<std::string>());
}

// Backend proposals that have at least a label and an image prompt.
std::vector<NodeProposal> parse_proposals(std::string_view reply,
                                          const Context& ctx) {
  std::vector<NodeProposal> out;
  auto body = scaffold::extract_json_object(reply);
  if (!body) return out;
  json doc = json::parse(*body, nullptr, false);
  if (!doc.is_object() || !doc.contains("proposals") ||
      !doc["proposals"].is_array()) {
    return out;
  }
  for (const json& p : doc["proposals"]) {
    if (!p.is_object()) continue;
    NodeProposal np;
    np.label = string_field(p, "label");
    np.description = string_field(p, "description");
    std::string prompt = string_field(p, "image_prompt");
    if (np.label.empty() || prompt.empty()) continue;
    if (np.description.empty()) np.description = np.label;
    np.image_prompt = compose_prompt(prompt, ctx);
    out.push_back(std::move(np));
  }
  return out;
}

bool passes(const NodeProposal& p, const scaffold::Moderator& moderator) {
  return !moderator.moderate(p.label).blocked() &&
         !moderator.moderate(p.description).blocked() &&
         !moderator.moderate(p.image_prompt).blocked();
}

void check_proposal(const NodeProposal& p,
                    const scaffold::Moderator& moderator) {
  for (const std::string* text : {&p.label, &p.description, &p.image_prompt}) {
    auto m = moderator.moderate(*text);
    if (m.blocked()) {
      throw Error(Errc::ModerationBlocked,
                  "proposal text is not allowed",
                  std::string(to_string(*m.category)));
    }
  }
}

}  // namespace

const std::vector<std::string>& negative_prompt_terms() {
  static const std::vector<std::string> terms = [] {
    std::vector<std::string> out;
    std::string text = data_file("negative_prompts.txt");
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      std::string line = util::trim(std::string_view(text).substr(pos, end - pos));
      pos = end + 1;
      if (!line.empty() && line[0] != '#') out.push_back(std::move(line));
    }
    return out;
  }();
  return terms;
}

std::string default_negative_prompt() {
  return util::join(negative_prompt_terms(), ", ");
}

void attach_negative_terms(NodeProposal& proposal) {
  std::vector<std::string> parts;
  std::set<std::string> have;
  std::string_view rest = proposal.negative_prompt;
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string term = util::trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (!term.empty() && have.insert(util::to_lower(term)).second) {
      parts.push_back(std::move(term));
    }
  }
  for (const std::string& term : negative_prompt_terms()) {
    if (have.insert(util::to_lower(term)).second) parts.push_back(term);
  }
  proposal.negative_prompt = util::join(parts, ", ");
}

std::string subject_of(std::string_view utterance) {
  std::vector<std::string> words = plain_words(utterance);
  std::size_t start = 0;
  for (std::string_view trigger : kTriggers) {
    std::vector<std::string> t = plain_words(trigger);
    auto it = std::search(words.begin(), words.end(), t.begin(), t.end());
    if (it != words.end()) {
      start = static_cast<std::size_t>(it - words.begin()) + t.size();
      break;
    }
  }
  while (start < words.size() && one_of(kArticles, words[start])) ++start;
  std::vector<std::string> subject;
  for (std::size_t i = start; i < words.size(); ++i) {
    if (one_of(kStops, words[i]) || subject.size() == kMaxSubjectWords) break;
    subject.push_back(words[i]);
  }
  if (subject.empty()) return util::trim(utterance);
  return util::join(subject, " ");
}

std::array<NodeProposal, 2> derive_image_prompts(
    const RemixRequest& request, const graph::VisualGraph& graph,
    scaffold::Backend& backend, const scaffold::Moderator& moderator) {
  std::string utterance = util::trim(request.utterance);
  if (utterance.empty()) {
    throw Error(Errc::InvalidArgument, "remix request needs an utterance");
  }
  if (auto m = moderator.moderate(utterance); m.blocked()) {
    throw Error(Errc::ModerationBlocked, "remix request is not allowed",
                std::string(to_string(*m.category)));
  }
  Context ctx = project_context(request, graph);
  scaffold::TemplateVars vars{
      {"project", request.project_name},
      {"utterance", utterance},
      {"canvas", ctx.scene},
      {"characters", ctx.characters},
      {"nodes", ctx.nodes},
      {"subject", subject_of(utterance)},
  };
  auto prompt = scaffold::make_prompt(Role::ImagePrompts, vars);
  std::vector<NodeProposal> candidates =
      parse_proposals(backend.generate(Role::ImagePrompts, prompt), ctx);
  // The templated variants back up malformed, duplicate or blocked replies.
  scaffold::StubBackend stub;
  for (auto& p : parse_proposals(stub.generate(Role::ImagePrompts, prompt), ctx)) {
    candidates.push_back(std::move(p));
  }

  std::vector<NodeProposal> chosen;
  for (auto& p : candidates) {
    if (chosen.size() == 2) break;
    if (!passes(p, moderator)) continue;
    bool duplicate = std::any_of(chosen.begin(), chosen.end(), [&](const NodeProposal& c) {
      return c.image_prompt == p.image_prompt;
    });
    if (duplicate) continue;
    chosen.push_back(std::move(p));
  }
  if (chosen.size() < 2) {
    // Only reachable when the project context itself fails moderation.
    throw Error(Errc::ModerationBlocked,
                "no acceptable proposal for this project context");
  }
  std::array<NodeProposal, 2> out{std::move(chosen[0]), std::move(chosen[1])};
  for (auto& p : out) {
    attach_negative_terms(p);
    check_proposal(p, moderator);
  }
  return out;
}

std::vector<graph::GraphEdge> suggest_edges(const graph::VisualGraph& graph,
                                            const NodeId& new_node,
                                            scaffold::Backend& backend) {
  const graph::GraphNode* node = graph.find_node(new_node);
  if (!node) throw Error(Errc::UnknownId, "node is not in the graph", new_node.str());

  std::vector<graph::GraphEdge> out;
  std::set<EdgeId> seen;
  auto offer = [&](const NodeId& from, const NodeId& to, graph::Relation r) {
    if (from == to || (from != new_node && to != new_node)) return;
    const graph::GraphNode* a = graph.find_node(from);
    const graph::GraphNode* b = graph.find_node(to);
    if (!a || !b || !graph::edge_allowed(a->kind, b->kind, r)) return;
    if (graph.find_triple(from, r, to)) return;
    EdgeId id = graph::canonical_edge_id(from, r, to);
    if (!seen.insert(id).second) return;
    out.push_back({id, from, to, r, graph::Origin::RemixSuggested});
  };

  scaffold::TemplateVars vars{
      {"graph", graph::serialize_graph(graph)},
      {"node_id", new_node.str()},
      {"node_kind", std::string(graph::to_string(node->kind))},
      {"node_label", node->label},
  };
  std::string reply;
  try {
    reply = backend.generate(Role::EdgeSuggest, scaffold::make_prompt(Role::EdgeSuggest, vars));
  } catch (const Error& e) {
    if (e.code() != Errc::BackendUnavailable) throw;
  }
  if (auto body = scaffold::extract_json_object(reply)) {
    json doc = json::parse(*body, nullptr, false);
    if (doc.is_object() && doc.contains("edges") && doc["edges"].is_array()) {
      for (const json& e : doc["edges"]) {
        if (!e.is_object()) continue;
        std::string from = string_field(e, "from");
        std::string to = string_field(e, "to");
        auto relation = graph::relation_from_string(string_field(e, "relation"));
        if (from.empty() || to.empty() || !relation) continue;
        offer(NodeId(from), NodeId(to), *relation);
      }
    }
  }

  auto involves_cc = [&](const graph::GraphEdge& e) {
    return graph::is_cc_node(graph.find_node(e.from)->kind) ||
           graph::is_cc_node(graph.find_node(e.to)->kind);
  };
  if (std::none_of(out.begin(), out.end(), involves_cc)) {
    // Same-canvas nodes first, then by id.
    std::vector<const graph::GraphNode*> partners;
    for (const auto& [id, other] : graph.nodes) {
      if (id == new_node) continue;
      if (graph::is_cc_node(other.kind) || graph::is_cc_node(node->kind)) {
        partners.push_back(&other);
      }
    }
    std::stable_partition(partners.begin(), partners.end(), [&](const graph::GraphNode* p) {
      return p->canvas == node->canvas;
    });
    for (const graph::GraphNode* p : partners) {
      std::size_t before = out.size();
      if (auto r = graph::relation_for(p->kind, node->kind)) offer(p->id, new_node, *r);
      if (out.size() == before) {
        if (auto r = graph::relation_for(node->kind, p->kind)) offer(new_node, p->id, *r);
      }
      if (out.size() > before) break;
    }
  }
  return out;
}

json proposal_to_json(const NodeProposal& p) {
  json j{{"label", p.label},
         {"description", p.description},
         {"image_prompt", p.image_prompt},
         {"negative_prompt", p.negative_prompt},
         {"image_ref", p.image_ref ? json(*p.image_ref) : json(nullptr)},
         {"image_unavailable", p.image_unavailable}};
  return j;
}

NodeProposal proposal_from_json(const json& j) {
  auto fail = [](const std::string& msg, const std::string& where) {
    return Error(Errc::MalformedSessionDocument, msg, where);
  };
  if (!j.is_object()) throw fail("proposal must be an object", "");
  NodeProposal p;
  for (auto [key, field] : {std::pair{"label", &p.label},
                            std::pair{"description", &p.description},
                            std::pair{"image_prompt", &p.image_prompt},
                            std::pair{"negative_prompt", &p.negative_prompt}}) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw fail(std::string(key) + " must be a string", std::string("/") + key);
    }
    *field = it->get<std::string>();
  }
  if (auto it = j.find("image_ref"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw fail("image_ref must be a string or null", "/image_ref");
    p.image_ref = it->get<std::string>();
  }
  if (auto it = j.find("image_unavailable"); it != j.end()) {
    if (!it->is_boolean()) throw fail("image_unavailable must be a boolean", "/image_unavailable");
    p.image_unavailable = it->get<bool>();
  }
  return p;
}

}  // namespace remixlab::remix
