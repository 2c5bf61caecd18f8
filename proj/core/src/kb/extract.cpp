#include "remixlab/kb/extract.hpp"

#include <algorithm>
#include <map>

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::kb {

std::string_view to_string(Tag tag) noexcept {
  switch (tag) {
    case Tag::Concept: return "concept";
    case Tag::Practice: return "practice";
    case Tag::CreativeIdea: return "creative-idea";
  }
  return "concept";
}

std::optional<Tag> tag_from_string(std::string_view s) noexcept {
  for (Tag t : kTags) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

TagSet tag_union(const TagSet& a, const TagSet& b) {
  TagSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  std::optional<Tag> section;
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
      section = tag_from_string(line.substr(1, line.size() - 2));
      if (!section) {
        throw Error(Errc::InvalidArgument, "unknown lexicon section " + line,
                    "line " + std::to_string(line_no));
      }
      continue;
    }
    if (!section) {
      throw Error(Errc::InvalidArgument, "term outside a section",
                  "line " + std::to_string(line_no));
    }
    lex.terms_[*section].push_back(util::to_lower(line));
  }
  return lex;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = parse(data_file("lexicon.txt"));
  return lex;
}

TagSet Lexicon::match(std::string_view sentence) const {
  std::vector<std::string> tokens = util::word_tokens(sentence);
  TagSet out;
  for (const auto& [tag, terms] : terms_) {
    for (const auto& term : terms) {
      if (util::contains_phrase(tokens, term)) {
        out.push_back(tag);
        break;
      }
    }
  }
  return out;
}

const std::vector<std::string>& Lexicon::terms(Tag tag) const {
  static const std::vector<std::string> none;
  auto it = terms_.find(tag);
  return it == terms_.end() ? none : it->second;
}

LexiconExtractor::LexiconExtractor()
    : LexiconExtractor(Lexicon::builtin(), builtin_abbreviations()) {}

LexiconExtractor::LexiconExtractor(Lexicon lexicon, Abbreviations abbreviations)
    : lexicon_(std::move(lexicon)), abbreviations_(std::move(abbreviations)) {}

std::vector<Candidate> LexiconExtractor::extract(const CorpusRecord& record,
                                                 const std::string& context) const {
  std::vector<Candidate> out;
  for (auto& sentence : split_sentences(record.text, abbreviations_)) {
    TagSet tags = lexicon_.match(sentence);
    if (tags.empty()) continue;
    out.push_back({std::move(sentence), context, std::move(tags)});
  }
  return out;
}

std::vector<Candidate> extract_knowledge(const std::vector<CorpusRecord>& records,
                                         const SentenceExtractor& extractor) {
  std::map<std::string_view, const CorpusRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  std::vector<Candidate> out;
  for (const auto& r : records) {
    const std::string* context = &r.text;
    if (r.parent_id) {
      auto it = by_id.find(*r.parent_id);
      if (it != by_id.end()) context = &it->second->text;
    }
    for (auto& c : extractor.extract(r, *context)) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Candidate> filter_length(std::vector<Candidate> candidates) {
  std::erase_if(candidates, [](const Candidate& c) {
    std::size_t w = word_count(c.sentence);
    return w < kMinWords || w > kMaxWords;
  });
  return candidates;
}

}  // namespace remixlab::kb
