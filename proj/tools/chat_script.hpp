#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace remixlab::cli {

/// One command per line; blank lines and lines starting with '#' are
/// skipped. Paths are relative to the script's directory.
///
///   load <project>        parse, build the forest, start a session
///   analyze               print the CT report summary
///   graph                 print the reference graph summary
///   say <text>            learner utterance
///   got_it | dont_know    button inputs
///   remix <utterance>     two node proposals for the first canvas
///   transcript            print the dialogue transcript so far
///
/// The transcript is always printed once more at the end, so the output
/// ends with "session state: <state>".
struct ScriptCommand {
  std::size_t line = 0;
  std::string verb;
  std::string argument;
};

/// Errors: InvalidArgument (unknown verb, missing argument; location
/// "line N").
std::vector<ScriptCommand> parse_chat_script(std::string_view text);

struct ChatScriptOptions {
  std::optional<std::filesystem::path> kb_path;
  unsigned max_loops = 3;
};

/// Runs against the stub text backend only, so the output is
/// a deterministic function of the script and project.
///
/// Errors: the typed errors of the stages it drives; InvalidArgument when
/// a command needs a project before `load`.
void run_chat_script(const std::filesystem::path& script, const ChatScriptOptions& options,
                     std::ostream& out);

}  // namespace remixlab::cli
