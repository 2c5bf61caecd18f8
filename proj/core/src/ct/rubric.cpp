#include "remixlab/ct/rubric.hpp"

#include <charconv>
#include <sstream>

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::ct {
namespace {

[[noreturn]] void bad_row(int line, const std::string& message) {
  throw Error(Errc::InvalidArgument, "rubric: " + message,
              "line " + std::to_string(line));
}

int parse_int(const std::string& s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    bad_row(line, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

std::optional<PredicateKind> predicate_from_string(std::string_view s) {
  if (s == "any") return PredicateKind::Any;
  if (s == "hat_scripts") return PredicateKind::HatScripts;
  if (s == "hat_scripts_same_sprite") return PredicateKind::HatScriptsSameSprite;
  if (s == "scripts_and_sprites") return PredicateKind::ScriptsAndSprites;
  if (s == "sequence") return PredicateKind::Sequence;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::Abstraction: return "abstraction";
    case Dimension::Parallelism: return "parallelism";
    case Dimension::Logic: return "logic";
    case Dimension::Synchronization: return "synchronization";
    case Dimension::FlowControl: return "flow_control";
    case Dimension::Interactivity: return "interactivity";
    case Dimension::DataRepresentation: return "data_representation";
  }
  return "abstraction";
}

std::optional<Dimension> dimension_from_string(std::string_view s) noexcept {
  for (Dimension d : kDimensions) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

std::string_view to_string(PredicateKind k) noexcept {
  switch (k) {
    case PredicateKind::Any: return "any";
    case PredicateKind::HatScripts: return "hat_scripts";
    case PredicateKind::HatScriptsSameSprite: return "hat_scripts_same_sprite";
    case PredicateKind::ScriptsAndSprites: return "scripts_and_sprites";
    case PredicateKind::Sequence: return "sequence";
  }
  return "any";
}

Rubric Rubric::parse(std::string_view text) {
  Rubric rubric;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::vector<std::string> words;
    for (auto w : util::whitespace_words(raw)) words.emplace_back(w);
    if (words.empty()) continue;
    if (words.size() < 3) bad_row(line, "expected dimension, level, predicate");

    RubricRow row;
    row.line = line;
    auto dim = dimension_from_string(words[0]);
    if (!dim) bad_row(line, "unknown dimension '" + words[0] + "'");
    row.dimension = *dim;
    row.level = parse_int(words[1], line);
    if (row.level < 1 || row.level > kMaxLevel) {
      bad_row(line, "level must be 1.." + std::to_string(kMaxLevel));
    }
    auto kind = predicate_from_string(words[2]);
    if (!kind) bad_row(line, "unknown predicate '" + words[2] + "'");
    row.kind = *kind;

    std::vector<std::string> args(words.begin() + 3, words.end());
    switch (row.kind) {
      case PredicateKind::Any:
        if (args.empty()) bad_row(line, "any needs at least one opcode");
        row.opcodes = std::move(args);
        break;
      case PredicateKind::HatScripts:
      case PredicateKind::HatScriptsSameSprite:
        if (args.size() < 2) bad_row(line, "expected a count and opcodes");
        row.first = parse_int(args[0], line);
        row.opcodes.assign(args.begin() + 1, args.end());
        break;
      case PredicateKind::ScriptsAndSprites:
        if (args.size() != 2) bad_row(line, "expected script and sprite counts");
        row.first = parse_int(args[0], line);
        row.second = parse_int(args[1], line);
        break;
      case PredicateKind::Sequence:
        if (args.size() != 1) bad_row(line, "expected a chain length");
        row.first = parse_int(args[0], line);
        break;
    }
    rubric.rows_.push_back(std::move(row));
  }
  return rubric;
}

const Rubric& Rubric::builtin() {
  static const Rubric rubric = parse(data_file("rubric.tsv"));
  return rubric;
}

std::vector<const RubricRow*> Rubric::rows_for(Dimension d, int level) const {
  std::vector<const RubricRow*> out;
  for (const auto& row : rows_) {
    if (row.dimension == d && row.level == level) out.push_back(&row);
  }
  return out;
}

}  // namespace remixlab::ct
