#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/scaffold/backend.hpp"

namespace remixlab::scaffold {

enum class JudgmentLabel { Clear, Vague, Negative };

std::string_view to_string(JudgmentLabel label) noexcept;
std::optional<JudgmentLabel> judgment_label_from_string(std::string_view s) noexcept;

struct ResponseJudgment {
  JudgmentLabel label = JudgmentLabel::Vague;
  std::string rationale;

  bool operator==(const ResponseJudgment&) const = default;
};

const std::vector<std::string>& builtin_refusals();

inline constexpr std::size_t kClearMinWords = 5;

/// negative when a refusal phrase occurs, vague under five words or with no
/// expected concept mentioned (plural forms count), clear otherwise.
ResponseJudgment fallback_judge(std::string_view answer,
                                const std::vector<std::string>& expected_concepts);

/// Asks the backend when one is given; malformed or unavailable replies
/// fall back to the rule judge.
ResponseJudgment check_response(std::string_view answer,
                                const std::vector<std::string>& expected_concepts,
                                Backend* judge = nullptr,
                                std::string_view thinking_question = {});

}  // namespace remixlab::scaffold
