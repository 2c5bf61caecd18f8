#include "remixlab/kb/sentences.hpp"

#include <cctype>

#include "remixlab/data.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::kb {
namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

}  // namespace

Abbreviations parse_abbreviations(std::string_view text) {
  Abbreviations out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = util::trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    out.insert(util::to_lower(line));
  }
  return out;
}

const Abbreviations& builtin_abbreviations() {
  static const Abbreviations a = parse_abbreviations(data_file("abbreviations.txt"));
  return a;
}

std::vector<std::string> split_sentences(std::string_view text,
                                         const Abbreviations& abbreviations) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = util::trim(text.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < text.size() && is_terminal(text[run_end])) ++run_end;
    bool boundary = run_end == text.size() || is_space(text[run_end]);
    if (boundary && text[run_end - 1] == '.' && run_end - i == 1) {
      std::size_t word_start = i;
      while (word_start > start && !is_space(text[word_start - 1])) --word_start;
      std::string word = util::to_lower(text.substr(word_start, run_end - word_start));
      if (abbreviations.count(word)) boundary = false;
    }
    if (boundary) emit(run_end);
    i = run_end;
  }
  emit(text.size());
  return out;
}

std::size_t word_count(std::string_view text) {
  return util::whitespace_words(text).size();
}

}  // namespace remixlab::kb
