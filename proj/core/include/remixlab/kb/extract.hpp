#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/kb/records.hpp"
#include "remixlab/kb/sentences.hpp"

namespace remixlab::kb {

enum class Tag { Concept, Practice, CreativeIdea };

inline constexpr std::array<Tag, 3> kTags{Tag::Concept, Tag::Practice,
                                          Tag::CreativeIdea};

std::string_view to_string(Tag tag) noexcept;
std::optional<Tag> tag_from_string(std::string_view s) noexcept;

/// Sorted, duplicate free.
using TagSet = std::vector<Tag>;

TagSet tag_union(const TagSet& a, const TagSet& b);

struct Candidate {
  std::string sentence;
  std::string context;
  TagSet tags;

  bool operator==(const Candidate&) const = default;
};

class Lexicon {
 public:
  /// "[concept]" style section headers followed by one term per line.
  static Lexicon parse(std::string_view text);
  static const Lexicon& builtin();

  TagSet match(std::string_view sentence) const;
  const std::vector<std::string>& terms(Tag tag) const;

 private:
  std::map<Tag, std::vector<std::string>> terms_;
};

class SentenceExtractor {
 public:
  virtual ~SentenceExtractor() = default;
  /// `context` is the text of the record being answered, or the record's
  /// own text when it answers nothing.
  virtual std::vector<Candidate> extract(const CorpusRecord& record,
                                         const std::string& context) const = 0;
};

/// Keeps sentences that contain a lexicon term.
class LexiconExtractor : public SentenceExtractor {
 public:
  LexiconExtractor();
  LexiconExtractor(Lexicon lexicon, Abbreviations abbreviations);

  std::vector<Candidate> extract(const CorpusRecord& record,
                                 const std::string& context) const override;

 private:
  Lexicon lexicon_;
  Abbreviations abbreviations_;
};

/// Records are visited in order; replies and comments get their parent's
/// text as context.
std::vector<Candidate> extract_knowledge(const std::vector<CorpusRecord>& records,
                                         const SentenceExtractor& extractor);

inline constexpr std::size_t kMinWords = 5;
inline constexpr std::size_t kMaxWords = 400;

std::vector<Candidate> filter_length(std::vector<Candidate> candidates);

}  // namespace remixlab::kb
