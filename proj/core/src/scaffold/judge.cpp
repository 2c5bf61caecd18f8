#include "remixlab/scaffold/judge.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::scaffold {

std::string_view to_string(JudgmentLabel label) noexcept {
  switch (label) {
    case JudgmentLabel::Clear: return "clear";
    case JudgmentLabel::Vague: return "vague";
    case JudgmentLabel::Negative: return "negative";
  }
  return "vague";
}

std::optional<JudgmentLabel> judgment_label_from_string(std::string_view s) noexcept {
  if (s == "clear") return JudgmentLabel::Clear;
  if (s == "vague") return JudgmentLabel::Vague;
  if (s == "negative") return JudgmentLabel::Negative;
  return std::nullopt;
}

const std::vector<std::string>& builtin_refusals() {
  static const std::vector<std::string> phrases = [] {
    std::vector<std::string> out;
    std::string text = data_file("refusals.txt");
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      std::string line = util::trim(std::string_view(text).substr(pos, end - pos));
      pos = end + 1;
      if (!line.empty() && line[0] != '#') out.push_back(util::to_lower(line));
    }
    return out;
  }();
  return phrases;
}

ResponseJudgment fallback_judge(std::string_view answer,
                                const std::vector<std::string>& expected_concepts) {
  std::vector<std::string> tokens = util::word_tokens(answer);
  for (const auto& phrase : builtin_refusals()) {
    if (util::contains_phrase(tokens, phrase)) {
      return {JudgmentLabel::Negative, "the answer says \"" + phrase + "\""};
    }
  }
  std::size_t words = util::whitespace_words(answer).size();
  if (words < kClearMinWords) {
    return {JudgmentLabel::Vague, "the answer has " + std::to_string(words) +
                                      " words, fewer than " + std::to_string(kClearMinWords)};
  }
  std::vector<std::string> hits;
  for (const auto& concept_name : expected_concepts) {
    std::vector<std::string> plural = util::word_tokens(concept_name);
    if (plural.empty()) continue;
    std::string singular = util::join(plural, " ");
    plural.back() += "s";
    if (util::contains_phrase(tokens, singular) ||
        util::contains_phrase(tokens, util::join(plural, " "))) {
      hits.push_back(singular);
    }
  }
  if (hits.empty()) {
    return {JudgmentLabel::Vague, "the answer mentions none of: " +
                                      util::join(expected_concepts, ", ")};
  }
  return {JudgmentLabel::Clear, "the answer explains " + util::join(hits, ", ")};
}

ResponseJudgment check_response(std::string_view answer,
                                const std::vector<std::string>& expected_concepts,
                                Backend* judge, std::string_view thinking_question) {
  if (!judge) return fallback_judge(answer, expected_concepts);
  try {
    PromptContext prompt = make_prompt(
        Role::Judge, {{"thinking_question", std::string(thinking_question)},
                      {"answer", std::string(answer)},
                      {"concepts", util::join(expected_concepts, ", ")}});
    auto body = extract_json_object(judge->generate(Role::Judge, prompt));
    if (body) {
      auto j = nlohmann::json::parse(*body);
      auto label = judgment_label_from_string(j.value("label", ""));
      if (label) return {*label, j.value("rationale", "")};
    }
  } catch (const Error& e) {
    if (e.code() != Errc::BackendUnavailable) throw;
  } catch (const nlohmann::json::exception&) {
  }
  return fallback_judge(answer, expected_concepts);
}

}  // namespace remixlab::scaffold
