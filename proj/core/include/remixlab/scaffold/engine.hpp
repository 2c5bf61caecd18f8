#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/graph/visual_graph.hpp"
#include "remixlab/kb/knowledge_base.hpp"
#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/scaffold/closure.hpp"
#include "remixlab/scaffold/judge.hpp"
#include "remixlab/scaffold/moderation.hpp"

namespace remixlab::scaffold {

enum class DialogueState {
  AwaitQuestion,
  VisualScaffold,
  ThinkingQuestion,
  AwaitResponse,
  TextualScaffold,
  Resolved,
};

inline constexpr std::array<DialogueState, 6> kDialogueStates{
    DialogueState::AwaitQuestion, DialogueState::VisualScaffold,
    DialogueState::ThinkingQuestion, DialogueState::AwaitResponse,
    DialogueState::TextualScaffold, DialogueState::Resolved};

std::string_view to_string(DialogueState s) noexcept;
std::optional<DialogueState> dialogue_state_from_string(std::string_view s) noexcept;

enum class InputKind { Utterance, GotIt, DontKnow };

std::string_view to_string(InputKind k) noexcept;
std::optional<InputKind> input_kind_from_string(std::string_view s) noexcept;

struct TurnInput {
  InputKind kind = InputKind::Utterance;
  std::string text;

  static TurnInput utterance(std::string text) { return {InputKind::Utterance, std::move(text)}; }
  static TurnInput got_it() { return {InputKind::GotIt, {}}; }
  static TurnInput dont_know() { return {InputKind::DontKnow, {}}; }

  bool operator==(const TurnInput&) const = default;
};

enum class ResponseKind {
  VisualScaffold,
  ThinkingQuestion,
  TextualScaffold,
  Resolved,
  Referral,
  Prompt,
  Refusal,
};

std::string_view to_string(ResponseKind k) noexcept;
std::optional<ResponseKind> response_kind_from_string(std::string_view s) noexcept;

struct Citation {
  std::string marker;  // "K1"
  std::string entry_id;
  std::string text;
  double score = 0;

  bool operator==(const Citation&) const = default;
};

struct ScaffoldResponse {
  ResponseKind kind = ResponseKind::Prompt;
  std::string text;
  std::optional<BlockGraphHighlight> highlight;
  std::optional<ResponseJudgment> judgment;
  std::vector<Citation> knowledge;
  /// Set when the learner's input or the generated text was blocked.
  std::optional<ModerationCategory> blocked;

  bool operator==(const ScaffoldResponse&) const = default;
};

struct Turn {
  std::size_t index = 0;
  TurnInput input;
  /// States passed through, starting with the state before the turn.
  std::vector<DialogueState> path;
  ScaffoldResponse response;

  bool operator==(const Turn&) const = default;
};

inline constexpr unsigned kDefaultMaxLoops = 3;

struct DialogueSession {
  std::string session_id;
  std::string project_ref;
  graph::VisualGraph learner_graph;
  graph::VisualGraph reference_graph;
  DialogueState state = DialogueState::AwaitQuestion;
  std::vector<Turn> transcript;
  std::optional<std::string> pending_question;
  std::optional<std::string> thinking_question;
  std::optional<BlockGraphHighlight> highlight;
  unsigned loop_count = 0;
  unsigned max_loops = kDefaultMaxLoops;

  bool operator==(const DialogueSession&) const = default;
};

struct TurnResult {
  DialogueSession session;
  ScaffoldResponse response;
};

struct EngineOptions {
  unsigned max_loops = kDefaultMaxLoops;
  std::size_t retrieval_k = 3;
  std::string project_name;
};

/// Stateless apart from its collaborators; one engine can serve many
/// sessions from many threads as long as the backend and moderator can.
class ScaffoldEngine {
 public:
  /// `kb` and `judge` may be null: retrieval then yields nothing and the
  /// rule judge decides.
  ScaffoldEngine(Backend& backend, const Moderator& moderator,
                 const kb::KnowledgeBase* kb = nullptr, Backend* judge = nullptr,
                 EngineOptions options = {});

  DialogueSession start_session(const sb3::BlockForest& forest,
                                graph::VisualGraph learner_graph,
                                std::string session_id,
                                std::string project_ref = {}) const;

  /// Throws SessionResolved, BackendUnavailable, TargetNotInProject. A
  /// blocked input or output is not thrown: the turn is recorded with the
  /// refusal text and `blocked` set.
  TurnResult handle_turn(const DialogueSession& session,
                         const sb3::BlockForest& forest,
                         const TurnInput& input) const;

  /// Generated text that fails moderation comes back as the refusal text,
  /// with the category stored in `blocked` when given.
  BlockGraphHighlight visual_scaffold(std::string_view question,
                                      const sb3::BlockForest& forest,
                                      std::optional<ModerationCategory>* blocked = nullptr) const;

  std::vector<Citation> retrieve_knowledge(std::string_view query) const;

  std::string thinking_question(std::string_view question,
                                const BlockGraphHighlight& highlight,
                                const sb3::BlockForest& forest,
                                const std::vector<Citation>& knowledge,
                                std::optional<ModerationCategory>* blocked = nullptr) const;

  std::string textual_scaffold(std::string_view question, std::string_view answer,
                               const BlockGraphHighlight& highlight,
                               const sb3::BlockForest& forest,
                               const std::vector<Citation>& knowledge,
                               std::optional<ModerationCategory>* blocked = nullptr) const;

  const Moderator& moderator() const noexcept { return moderator_; }
  const EngineOptions& options() const noexcept { return options_; }

 private:
  std::string screen(std::string text, std::optional<ModerationCategory>* blocked) const;

  Backend& backend_;
  const Moderator& moderator_;
  const kb::KnowledgeBase* kb_;
  std::optional<kb::HashedTfIdfEmbedder> embedder_;
  Backend* judge_;
  EngineOptions options_;
};

/// Concepts a clear answer should touch, from the highlighted opcodes.
std::vector<std::string> expected_concepts(const BlockGraphHighlight& highlight,
                                           const sb3::BlockForest& forest);

/// One line per highlighted block: "<id>: <text>".
std::string highlight_lines(const BlockGraphHighlight& highlight,
                            const sb3::BlockForest& forest);

}  // namespace remixlab::scaffold
