#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace remixlab::util {

/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, flushes, then renames over `path`,
/// so readers see either the old or the new content. Throws IoError.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace remixlab::util
