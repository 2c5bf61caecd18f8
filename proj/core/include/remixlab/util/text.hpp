#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace remixlab::util {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Maximal runs of non-whitespace characters.
std::vector<std::string_view> whitespace_words(std::string_view s);

// Lowercased alphanumeric tokens; bytes >= 0x80 count as word characters so
// UTF-8 words stay intact.
std::vector<std::string> word_tokens(std::string_view s);

// True when `phrase` (already lowercased, space-separated tokens) occurs as
// a contiguous token sequence in `tokens`.
bool contains_phrase(const std::vector<std::string>& tokens,
                     std::string_view phrase);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace remixlab::util
