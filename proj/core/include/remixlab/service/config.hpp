#pragma once

#include <cstdint>
#include <functional>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::service {

inline constexpr std::size_t kDefaultMaxUploadBytes = 32u * 1024u * 1024u;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  // Holds sessions/, archives/ and assets/.
  std::filesystem::path state_dir = "remixlab-state";
  // Knowledge base file; none means retrieval yields nothing.
  std::optional<std::filesystem::path> kb_path;
  std::int64_t session_ttl_s = 24 * 60 * 60;
  std::int64_t sweep_interval_s = 60;
  std::size_t max_upload_bytes = kDefaultMaxUploadBytes;
  std::string cors_origin = "*";
  unsigned max_loops = 3;
  std::size_t retrieval_k = 3;
  unsigned worker_threads = 8;

  std::filesystem::path sessions_dir() const { return state_dir / "sessions"; }
  std::filesystem::path archives_dir() const { return state_dir / "archives"; }
  std::filesystem::path assets_dir() const { return state_dir / "assets"; }
};

/// One configuration source: key -> textual value.
using ConfigLayer = std::map<std::string, std::string, std::less<>>;

/// Every recognised key, in documentation order.
const std::vector<std::string_view>& config_keys();

/// REMIXLAB_<KEY upper-cased> variables, e.g. REMIXLAB_PORT,
/// REMIXLAB_STATE_DIR. `getenv` is injectable for tests.
ConfigLayer env_layer(const std::function<const char*(const char*)>& getenv);
ConfigLayer env_layer();

/// JSON object with the same keys; numbers and strings both accepted.
/// Errors: ConfigError (unreadable file, unknown key, bad value type).
ConfigLayer file_layer(const std::filesystem::path& path);

/// Precedence: flags > env > file > defaults.
/// Errors: ConfigError (unknown key or unparsable value, location is the
/// key).
ServiceConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env,
                             const ConfigLayer& flags);

}  // namespace remixlab::service
