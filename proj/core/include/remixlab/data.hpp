#pragma once

#include <string>
#include <string_view>

namespace remixlab {

/// Returns the content of a shipped data file ("rubric.tsv",
/// "prompts/summary.tmpl", ...). A copy under $REMIXLAB_DATA_DIR takes
/// precedence over the compiled-in version.
std::string data_file(std::string_view relative_path);

}  // namespace remixlab
