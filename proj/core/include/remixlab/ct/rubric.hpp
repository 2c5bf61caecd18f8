#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::ct {

enum class Dimension {
  Abstraction,
  Parallelism,
  Logic,
  Synchronization,
  FlowControl,
  Interactivity,
  DataRepresentation,
};

inline constexpr std::array<Dimension, 7> kDimensions{
    Dimension::Abstraction,     Dimension::Parallelism,
    Dimension::Logic,           Dimension::Synchronization,
    Dimension::FlowControl,     Dimension::Interactivity,
    Dimension::DataRepresentation,
};

inline constexpr int kMaxLevel = 3;

std::string_view to_string(Dimension d) noexcept;
std::optional<Dimension> dimension_from_string(std::string_view s) noexcept;

enum class PredicateKind {
  Any,
  HatScripts,
  HatScriptsSameSprite,
  ScriptsAndSprites,
  Sequence,
};

std::string_view to_string(PredicateKind k) noexcept;

struct RubricRow {
  Dimension dimension = Dimension::Abstraction;
  int level = 1;
  PredicateKind kind = PredicateKind::Any;
  // Threshold(s): n for hat/sequence predicates; scripts, sprites for
  // scripts_and_sprites.
  int first = 0;
  int second = 0;
  std::vector<std::string> opcodes;
  int line = 0;
};

/// Rubric table loaded from the line format described in docs/rubric.md.
/// Malformed rows raise Error{Errc::InvalidArgument} with "line N".
class Rubric {
 public:
  static Rubric parse(std::string_view text);
  // The shipped rubric.tsv.
  static const Rubric& builtin();

  const std::vector<RubricRow>& rows() const noexcept { return rows_; }
  std::vector<const RubricRow*> rows_for(Dimension d, int level) const;

 private:
  std::vector<RubricRow> rows_;
};

}  // namespace remixlab::ct
