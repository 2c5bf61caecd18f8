#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "remixlab/scaffold/templates.hpp"

namespace remixlab::scaffold {

enum class Role {
  VisualTarget,
  ThinkingQuestion,
  TextualHint,
  Judge,
  ImagePrompts,
  EdgeSuggest,
};

std::string_view to_string(Role role) noexcept;

struct PromptContext {
  std::string template_id;
  /// Everything the template saw, plus role-specific extras for backends
  /// that do not read prose.
  TemplateVars vars;
  std::string system;
  std::string rendered;
};

/// Renders the role's template and the persona (or image preamble) as the
/// system text.
PromptContext make_prompt(Role role, TemplateVars vars);

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  /// Throws BackendUnavailable when the model cannot be reached.
  virtual std::string generate(Role role, const PromptContext& prompt) = 0;
};

/// Deterministic templated replies computed from the prompt vars.
class StubBackend : public Backend {
 public:
  std::string name() const override { return "stub"; }
  std::string generate(Role role, const PromptContext& prompt) override;
};

struct ChatClientConfig {
  std::string endpoint;
  std::string api_key;
  std::string model;
  std::chrono::milliseconds timeout{30000};
};

/// Reads REMIXLAB_LLM_ENDPOINT, REMIXLAB_LLM_API_KEY, REMIXLAB_LLM_MODEL and
/// REMIXLAB_LLM_TIMEOUT_MS. Empty when no endpoint is set.
std::optional<ChatClientConfig> chat_config_from_env();

/// OpenAI-style chat completion endpoint, temperature 0.
class ChatClientBackend : public Backend {
 public:
  explicit ChatClientBackend(ChatClientConfig config);
  std::string name() const override { return "chat:" + config_.model; }
  std::string generate(Role role, const PromptContext& prompt) override;

 private:
  ChatClientConfig config_;
};

/// Live client when configured, stub otherwise.
std::unique_ptr<Backend> backend_from_env();

/// First {...} object in model output, tolerating surrounding prose or code
/// fences. Empty when none parses.
std::optional<std::string> extract_json_object(std::string_view text);

}  // namespace remixlab::scaffold
