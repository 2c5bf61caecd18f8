#include "remixlab/scaffold/moderation.hpp"

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::scaffold {

std::string_view to_string(ModerationCategory c) noexcept {
  switch (c) {
    case ModerationCategory::ExplicitContent: return "explicit-content";
    case ModerationCategory::HateSpeech: return "hate-speech";
    case ModerationCategory::Harassment: return "harassment";
    case ModerationCategory::Violence: return "violence";
    case ModerationCategory::SelfHarm: return "self-harm";
  }
  return "explicit-content";
}

std::optional<ModerationCategory> moderation_category_from_string(std::string_view s) noexcept {
  for (auto c : kModerationCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

Blocklist Blocklist::parse(std::string_view text) {
  Blocklist out;
  std::optional<ModerationCategory> section;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = util::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = moderation_category_from_string(line.substr(1, line.size() - 2));
      if (!section) {
        throw Error(Errc::InvalidArgument, "unknown blocklist category " + line,
                    "line " + std::to_string(line_no));
      }
      continue;
    }
    if (!section) {
      throw Error(Errc::InvalidArgument, "term outside a category",
                  "line " + std::to_string(line_no));
    }
    out.terms_[*section].push_back(util::to_lower(line));
  }
  return out;
}

const Blocklist& Blocklist::builtin() {
  static const Blocklist b = parse(data_file("blocklist.txt"));
  return b;
}

ModerationResult Blocklist::check(std::string_view text) const {
  std::vector<std::string> tokens = util::word_tokens(text);
  if (tokens.empty()) return {};
  for (auto c : kModerationCategories) {
    auto it = terms_.find(c);
    if (it == terms_.end()) continue;
    for (const auto& term : it->second) {
      if (util::contains_phrase(tokens, term)) return {c, term};
    }
  }
  return {};
}

const std::vector<std::string>& Blocklist::terms(ModerationCategory c) const {
  static const std::vector<std::string> none;
  auto it = terms_.find(c);
  return it == terms_.end() ? none : it->second;
}

Moderator::Moderator() : Moderator(Blocklist::builtin()) {}

Moderator::Moderator(Blocklist blocklist, std::shared_ptr<ExternalModerator> external)
    : blocklist_(std::move(blocklist)), external_(std::move(external)) {}

ModerationResult Moderator::moderate(std::string_view text) const {
  ModerationResult local = blocklist_.check(text);
  if (local.blocked() || !external_) return local;
  if (auto c = external_->check(text)) return {*c, "external"};
  return {};
}

ModerationResult moderate(std::string_view text) {
  return Blocklist::builtin().check(text);
}

}  // namespace remixlab::scaffold
