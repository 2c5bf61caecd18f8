#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::scaffold {

enum class ModerationCategory {
  ExplicitContent,
  HateSpeech,
  Harassment,
  Violence,
  SelfHarm,
};

inline constexpr std::array<ModerationCategory, 5> kModerationCategories{
    ModerationCategory::ExplicitContent, ModerationCategory::HateSpeech,
    ModerationCategory::Harassment, ModerationCategory::Violence,
    ModerationCategory::SelfHarm};

std::string_view to_string(ModerationCategory c) noexcept;
std::optional<ModerationCategory> moderation_category_from_string(std::string_view s) noexcept;

struct ModerationResult {
  std::optional<ModerationCategory> category;
  std::string term;

  bool blocked() const noexcept { return category.has_value(); }
};

/// Whole-word, case-insensitive phrase list per category.
class Blocklist {
 public:
  static Blocklist parse(std::string_view text);
  static const Blocklist& builtin();

  ModerationResult check(std::string_view text) const;
  const std::vector<std::string>& terms(ModerationCategory c) const;

 private:
  std::map<ModerationCategory, std::vector<std::string>> terms_;
};

/// Optional second opinion, e.g. a hosted moderation endpoint.
class ExternalModerator {
 public:
  virtual ~ExternalModerator() = default;
  virtual std::optional<ModerationCategory> check(std::string_view text) = 0;
};

/// The local blocklist always runs first; an external moderator can only
/// add blocks on top of it.
class Moderator {
 public:
  Moderator();
  explicit Moderator(Blocklist blocklist,
                     std::shared_ptr<ExternalModerator> external = nullptr);

  ModerationResult moderate(std::string_view text) const;

 private:
  Blocklist blocklist_;
  std::shared_ptr<ExternalModerator> external_;
};

/// Builtin blocklist only.
ModerationResult moderate(std::string_view text);

inline constexpr std::string_view kRefusalText =
    "Sorry, I can't help with that. Let's get back to the project.";

}  // namespace remixlab::scaffold
