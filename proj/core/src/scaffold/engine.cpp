#include "remixlab/scaffold/engine.hpp"

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/graph/extract.hpp"
#include "remixlab/sb3/describe.hpp"
#include "remixlab/sb3/opcodes.hpp"
#include "remixlab/sb3/traversal.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::scaffold {
namespace {

constexpr std::string_view kReferralText =
    "Let's pause this one here. Try asking again in your own words, or look at "
    "these blocks together with a friend or a teacher.";
constexpr std::string_view kResolvedText =
    "Great explanation! You worked out how these blocks fit together.";
constexpr std::string_view kAskFirstText = "Ask me a question about the project first.";
constexpr std::string_view kOwnWordsText = "Tell me your answer in your own words.";
constexpr std::string_view kEmptyInputText = "Please type a question or an answer.";

int control_depth(const sb3::SpriteForest& sprite, const sb3::BlockNode& node) {
  int depth = 0;
  const sb3::BlockNode* cur = &node;
  while (cur->parent) {
    const sb3::BlockNode* p = sprite.find(*cur->parent);
    if (!p) break;
    if (!(p->next && *p->next == cur->id)) ++depth;
    cur = p;
  }
  return depth;
}

struct BlockLister : sb3::ForestVisitor {
  std::string out;
  void visit_block(const sb3::SpriteForest& sprite, const sb3::BlockNode& node,
                   const sb3::VisitContext&) override {
    out += node.id.str() + "\t" + sprite.name + "\t" +
           std::to_string(control_depth(sprite, node)) + "\t" +
           sb3::describe_block(sprite, node) + "\n";
  }
};

std::string block_text(const sb3::BlockForest& forest, const BlockId& id) {
  auto [sprite, node] = forest.find(id);
  return node ? sb3::describe_block(*sprite, *node) : id.str();
}

std::string knowledge_lines(const std::vector<Citation>& knowledge) {
  if (knowledge.empty()) return "(none)";
  std::string out;
  for (const auto& c : knowledge) out += "[" + c.marker + "] " + c.text + "\n";
  return out;
}

// Innermost enclosing condition and loop of the highlight's target.
struct Surroundings {
  std::string condition;
  std::string loop;
};

Surroundings surroundings(const BlockGraphHighlight& h, const sb3::BlockForest& forest) {
  Surroundings s;
  for (const auto& id : h.generated_block) {
    auto [sprite, node] = forest.find(id);
    if (!node) continue;
    if (sb3::is_conditional(node->opcode)) {
      const sb3::Input* cond = node->input("CONDITION");
      s.condition = cond && cond->block() ? sb3::render_expression(*sprite, *cond->block())
                                          : std::string("true");
    } else if (sb3::is_loop(node->opcode)) {
      s.loop = sb3::describe_block(*sprite, *node);
    }
    if (id == h.target) break;
  }
  return s;
}

}  // namespace

std::string_view to_string(DialogueState s) noexcept {
  switch (s) {
    case DialogueState::AwaitQuestion: return "AwaitQuestion";
    case DialogueState::VisualScaffold: return "VisualScaffold";
    case DialogueState::ThinkingQuestion: return "ThinkingQuestion";
    case DialogueState::AwaitResponse: return "AwaitResponse";
    case DialogueState::TextualScaffold: return "TextualScaffold";
    case DialogueState::Resolved: return "Resolved";
  }
  return "AwaitQuestion";
}

std::optional<DialogueState> dialogue_state_from_string(std::string_view s) noexcept {
  for (auto st : kDialogueStates) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string_view to_string(InputKind k) noexcept {
  switch (k) {
    case InputKind::Utterance: return "utterance";
    case InputKind::GotIt: return "got_it";
    case InputKind::DontKnow: return "dont_know";
  }
  return "utterance";
}

std::optional<InputKind> input_kind_from_string(std::string_view s) noexcept {
  for (auto k : {InputKind::Utterance, InputKind::GotIt, InputKind::DontKnow}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ResponseKind k) noexcept {
  switch (k) {
    case ResponseKind::VisualScaffold: return "visual_scaffold";
    case ResponseKind::ThinkingQuestion: return "thinking_question";
    case ResponseKind::TextualScaffold: return "textual_scaffold";
    case ResponseKind::Resolved: return "resolved";
    case ResponseKind::Referral: return "referral";
    case ResponseKind::Prompt: return "prompt";
    case ResponseKind::Refusal: return "refusal";
  }
  return "prompt";
}

std::optional<ResponseKind> response_kind_from_string(std::string_view s) noexcept {
  for (auto k : {ResponseKind::VisualScaffold, ResponseKind::ThinkingQuestion,
                 ResponseKind::TextualScaffold, ResponseKind::Resolved,
                 ResponseKind::Referral, ResponseKind::Prompt, ResponseKind::Refusal}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<std::string> expected_concepts(const BlockGraphHighlight& highlight,
                                           const sb3::BlockForest& forest) {
  std::vector<std::string> out;
  auto add = [&](const char* c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& id : highlight.generated_block) {
    auto [sprite, node] = forest.find(id);
    if (!node) continue;
    const std::string& op = node->opcode;
    if (sb3::is_loop(op)) add("loop");
    if (sb3::is_conditional(op) || sb3::is_boolean_reporter(op)) add("condition");
    if (op.starts_with("data_")) add(op.find("list") != std::string::npos ? "list" : "variable");
    if (op.find("broadcast") != std::string::npos) add("broadcast");
    if (op.find("clone") != std::string::npos) add("clone");
    if (node->is_hat()) add("event");
  }
  return out;
}

std::string highlight_lines(const BlockGraphHighlight& highlight,
                            const sb3::BlockForest& forest) {
  std::string out;
  for (const auto& id : highlight.generated_block) {
    out += id.str() + ": " + block_text(forest, id) + "\n";
  }
  return out;
}

ScaffoldEngine::ScaffoldEngine(Backend& backend, const Moderator& moderator,
                               const kb::KnowledgeBase* kb, Backend* judge,
                               EngineOptions options)
    : backend_(backend), moderator_(moderator), kb_(kb), judge_(judge),
      options_(std::move(options)) {
  if (kb_ && !kb_->entries.empty()) embedder_ = kb_->embedder();
}

std::string ScaffoldEngine::screen(std::string text,
                                   std::optional<ModerationCategory>* blocked) const {
  ModerationResult m = moderator_.moderate(text);
  if (!m.blocked()) return text;
  if (blocked) *blocked = m.category;
  return std::string(kRefusalText);
}

DialogueSession ScaffoldEngine::start_session(const sb3::BlockForest& forest,
                                              graph::VisualGraph learner_graph,
                                              std::string session_id,
                                              std::string project_ref) const {
  DialogueSession s;
  s.session_id = std::move(session_id);
  s.project_ref = std::move(project_ref);
  s.learner_graph = std::move(learner_graph);
  s.reference_graph = graph::extract_reference_graph(forest);
  s.max_loops = options_.max_loops;
  return s;
}

BlockGraphHighlight ScaffoldEngine::visual_scaffold(
    std::string_view question, const sb3::BlockForest& forest,
    std::optional<ModerationCategory>* blocked) const {
  BlockLister lister;
  sb3::walk_forest(forest, lister);
  PromptContext prompt = make_prompt(Role::VisualTarget,
                                     {{"project", options_.project_name},
                                      {"question", std::string(question)},
                                      {"blocks", lister.out}});
  std::string last;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply = backend_.generate(Role::VisualTarget, prompt);
    std::string target, summary;
    if (auto body = extract_json_object(reply)) {
      auto j = nlohmann::json::parse(*body);
      if (j.contains("target") && j["target"].is_string()) target = j["target"];
      if (j.contains("summary") && j["summary"].is_string()) summary = j["summary"];
    }
    last = target;
    if (target.empty() || !forest.find(BlockId(target)).node) continue;
    BlockGraphHighlight h = control_closure(forest, BlockId(target));
    h.summary = screen(summary, blocked);
    return h;
  }
  throw Error(Errc::TargetNotInProject,
              "backend named a block that is not in the project twice", last);
}

std::vector<Citation> ScaffoldEngine::retrieve_knowledge(std::string_view query) const {
  std::vector<Citation> out;
  if (!embedder_) return out;
  auto hits = kb::retrieve(*kb_, *embedder_, query, options_.retrieval_k);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    out.push_back({"K" + std::to_string(i + 1), hits[i].entry->id, hits[i].entry->text,
                   hits[i].score});
  }
  return out;
}

std::string ScaffoldEngine::thinking_question(std::string_view question,
                                              const BlockGraphHighlight& highlight,
                                              const sb3::BlockForest& forest,
                                              const std::vector<Citation>& knowledge,
                                              std::optional<ModerationCategory>* blocked) const {
  Surroundings around = surroundings(highlight, forest);
  PromptContext prompt = make_prompt(
      Role::ThinkingQuestion, {{"question", std::string(question)},
                               {"highlight", highlight_lines(highlight, forest)},
                               {"knowledge", knowledge_lines(knowledge)},
                               {"condition", around.condition},
                               {"loop", around.loop},
                               {"target_text", block_text(forest, highlight.target)}});
  return screen(util::trim(backend_.generate(Role::ThinkingQuestion, prompt)), blocked);
}

std::string ScaffoldEngine::textual_scaffold(std::string_view question, std::string_view answer,
                                             const BlockGraphHighlight& highlight,
                                             const sb3::BlockForest& forest,
                                             const std::vector<Citation>& knowledge,
                                             std::optional<ModerationCategory>* blocked) const {
  PromptContext prompt = make_prompt(
      Role::TextualHint, {{"question", std::string(question)},
                          {"answer", std::string(answer)},
                          {"highlight", highlight_lines(highlight, forest)},
                          {"knowledge", knowledge_lines(knowledge)},
                          {"target_text", block_text(forest, highlight.target)}});
  return screen(backend_.generate(Role::TextualHint, prompt), blocked);
}

TurnResult ScaffoldEngine::handle_turn(const DialogueSession& session,
                                       const sb3::BlockForest& forest,
                                       const TurnInput& input) const {
  if (session.state == DialogueState::Resolved) {
    throw Error(Errc::SessionResolved, "session " + session.session_id + " is resolved",
                session.session_id);
  }
  TurnResult result{session, {}};
  DialogueSession& s = result.session;
  ScaffoldResponse& r = result.response;
  std::vector<DialogueState> path{s.state};
  auto go = [&](DialogueState next) {
    s.state = next;
    path.push_back(next);
  };
  auto prompt = [&](std::string_view text) {
    r.kind = ResponseKind::Prompt;
    r.text = text;
  };
  auto question = [&] { return s.pending_question.value_or(""); };
  auto knowledge = [&] {
    return retrieve_knowledge(question() + " " + block_text(forest, s.highlight->target));
  };
  auto ask_thinking = [&] {
    go(DialogueState::ThinkingQuestion);
    r.knowledge = knowledge();
    r.kind = ResponseKind::ThinkingQuestion;
    r.text = thinking_question(question(), *s.highlight, forest, r.knowledge, &r.blocked);
    r.highlight = s.highlight;
    s.thinking_question = r.text;
    go(DialogueState::AwaitResponse);
  };
  auto enter_textual = [&](std::string_view answer) {
    if (s.loop_count >= s.max_loops) {
      go(DialogueState::Resolved);
      r.kind = ResponseKind::Referral;
      r.text = kReferralText;
      return;
    }
    ++s.loop_count;
    go(DialogueState::TextualScaffold);
    r.knowledge = knowledge();
    r.kind = ResponseKind::TextualScaffold;
    r.text = textual_scaffold(question(), answer, *s.highlight, forest, r.knowledge, &r.blocked);
    r.highlight = s.highlight;
  };
  auto judge_answer = [&](const std::string& answer) {
    r.judgment = check_response(answer, expected_concepts(*s.highlight, forest), judge_,
                                s.thinking_question.value_or(""));
    if (r.judgment->label == JudgmentLabel::Clear) {
      go(DialogueState::Resolved);
      r.kind = ResponseKind::Resolved;
      r.text = kResolvedText;
    } else {
      enter_textual(answer);
    }
  };

  bool utterance = input.kind == InputKind::Utterance;
  ModerationResult in_check;
  if (utterance) in_check = moderator_.moderate(input.text);
  if (utterance && in_check.blocked()) {
    r.kind = ResponseKind::Refusal;
    r.text = kRefusalText;
    r.blocked = in_check.category;
  } else if (utterance && util::trim(input.text).empty()) {
    prompt(kEmptyInputText);
  } else {
    switch (s.state) {
      case DialogueState::AwaitQuestion:
      case DialogueState::VisualScaffold:
        if (utterance) {
          BlockGraphHighlight h = visual_scaffold(input.text, forest, &r.blocked);
          s.pending_question = input.text;
          s.thinking_question.reset();
          s.highlight = h;
          go(DialogueState::VisualScaffold);
          r.kind = ResponseKind::VisualScaffold;
          r.text = h.summary;
          r.highlight = std::move(h);
        } else if (s.state == DialogueState::AwaitQuestion) {
          prompt(kAskFirstText);
        } else if (!s.highlight) {
          prompt(kAskFirstText);
        } else if (input.kind == InputKind::GotIt) {
          ask_thinking();
        } else {
          enter_textual("");
        }
        break;
      case DialogueState::AwaitResponse:
      case DialogueState::TextualScaffold:
        if (!s.highlight) {
          prompt(kAskFirstText);
        } else if (utterance) {
          judge_answer(input.text);
        } else if (input.kind == InputKind::DontKnow) {
          r.judgment = ResponseJudgment{JudgmentLabel::Negative, "the learner chose I don't know"};
          enter_textual("");
        } else if (s.state == DialogueState::TextualScaffold) {
          ask_thinking();
        } else {
          prompt(kOwnWordsText);
        }
        break;
      case DialogueState::ThinkingQuestion:
        // Transient: a stored session never rests here.
        if (s.highlight) ask_thinking();
        else prompt(kAskFirstText);
        break;
      case DialogueState::Resolved:
        break;
    }
    r.text = screen(std::move(r.text), &r.blocked);
  }

  s.transcript.push_back({s.transcript.size(), input, std::move(path), r});
  return result;
}

}  // namespace remixlab::scaffold
