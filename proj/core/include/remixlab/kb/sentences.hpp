#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::kb {

/// Lowercased tokens such as "e.g." that end in a period without ending a
/// sentence.
using Abbreviations = std::set<std::string, std::less<>>;

Abbreviations parse_abbreviations(std::string_view text);
const Abbreviations& builtin_abbreviations();

/// Splits after a run of '.', '?' or '!' that is followed by whitespace or
/// the end of the text, unless the token ending there is an abbreviation.
/// Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text,
                                         const Abbreviations& abbreviations =
                                             builtin_abbreviations());

/// Maximal whitespace-delimited runs.
std::size_t word_count(std::string_view text);

}  // namespace remixlab::kb
