#include "remixlab/scaffold/backend.hpp"

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"

namespace remixlab::scaffold {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::VisualTarget: return "visual_target";
    case Role::ThinkingQuestion: return "thinking_question";
    case Role::TextualHint: return "textual_hint";
    case Role::Judge: return "judge";
    case Role::ImagePrompts: return "image_prompts";
    case Role::EdgeSuggest: return "edge_suggest";
  }
  return "visual_target";
}

PromptContext make_prompt(Role role, TemplateVars vars) {
  PromptContext p;
  p.template_id = std::string(to_string(role));
  p.rendered = render_template(prompt_template(p.template_id), vars);
  p.system = prompt_template(role == Role::ImagePrompts ? "image_preamble" : "persona");
  p.vars = std::move(vars);
  return p;
}

std::unique_ptr<Backend> backend_from_env() {
  if (auto cfg = chat_config_from_env()) {
    return std::make_unique<ChatClientBackend>(std::move(*cfg));
  }
  return std::make_unique<StubBackend>();
}

std::optional<std::string> extract_json_object(std::string_view text) {
  for (std::size_t start = text.find('{'); start != std::string_view::npos;
       start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (in_string) {
        if (escaped) escaped = false;
        else if (c == '\\') escaped = true;
        else if (c == '"') in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}' && --depth == 0) {
        std::string candidate(text.substr(start, i - start + 1));
        if (nlohmann::json::accept(candidate)) return candidate;
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace remixlab::scaffold
