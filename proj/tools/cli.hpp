#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace remixlab::cli {

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Returns the process exit code: 0 on success, 1 for typed
/// errors (printed as "error: <Code>: <message>"), 2 for usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace remixlab::cli
