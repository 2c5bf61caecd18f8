#include "remixlab/service/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::service {
namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value, T min) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || out < min) {
    throw Error(Errc::ConfigError, "expected a number >= " + std::to_string(min) +
                                       ", got \"" + value + "\"", key);
  }
  return out;
}

void apply(ServiceConfig& c, const std::string& key, const std::string& v) {
  if (key == "host") {
    if (v.empty()) throw Error(Errc::ConfigError, "host must not be empty", key);
    c.host = v;
  } else if (key == "port") {
    c.port = parse_number<int>(key, v, 0);
    if (c.port > 65535) throw Error(Errc::ConfigError, "port out of range", key);
  } else if (key == "state_dir") {
    if (v.empty()) throw Error(Errc::ConfigError, "state_dir must not be empty", key);
    c.state_dir = v;
  } else if (key == "kb") {
    if (v.empty()) c.kb_path.reset();
    else c.kb_path = v;
  } else if (key == "session_ttl_s") {
    c.session_ttl_s = parse_number<std::int64_t>(key, v, 0);
  } else if (key == "sweep_interval_s") {
    c.sweep_interval_s = parse_number<std::int64_t>(key, v, 1);
  } else if (key == "max_upload_bytes") {
    c.max_upload_bytes = parse_number<std::size_t>(key, v, 1);
  } else if (key == "cors_origin") {
    c.cors_origin = v;
  } else if (key == "max_loops") {
    c.max_loops = parse_number<unsigned>(key, v, 1);
  } else if (key == "retrieval_k") {
    c.retrieval_k = parse_number<std::size_t>(key, v, 1);
  } else if (key == "worker_threads") {
    c.worker_threads = parse_number<unsigned>(key, v, 1);
  } else {
    throw Error(Errc::ConfigError, "unknown configuration key", key);
  }
}

std::string env_name(std::string_view key) {
  std::string name = "REMIXLAB_";
  for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "host",           "port",        "state_dir",   "kb",
      "session_ttl_s",  "sweep_interval_s", "max_upload_bytes", "cors_origin",
      "max_loops",      "retrieval_k", "worker_threads",
  };
  return keys;
}

ConfigLayer env_layer(const std::function<const char*(const char*)>& getenv) {
  ConfigLayer out;
  for (std::string_view key : config_keys()) {
    if (const char* v = getenv(env_name(key).c_str())) out.emplace(key, v);
  }
  return out;
}

ConfigLayer env_layer() {
  return env_layer([](const char* name) { return std::getenv(name); });
}

ConfigLayer file_layer(const std::filesystem::path& path) {
  std::string text;
  try {
    text = util::read_text_file(path);
  } catch (const Error&) {
    throw Error(Errc::ConfigError, "cannot read configuration file", path.string());
  }
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_object()) {
    throw Error(Errc::ConfigError, "configuration file must hold a JSON object", path.string());
  }
  ConfigLayer out;
  for (auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      out.emplace(key, value.get<std::string>());
    } else if (value.is_number_integer()) {
      out.emplace(key, value.dump());
    } else {
      throw Error(Errc::ConfigError, "value must be a string or an integer", key);
    }
  }
  return out;
}

ServiceConfig resolve_config(const ConfigLayer& file, const ConfigLayer& env,
                             const ConfigLayer& flags) {
  ServiceConfig config;
  for (const ConfigLayer* layer : {&file, &env, &flags}) {
    for (const auto& [key, value] : *layer) apply(config, key, value);
  }
  return config;
}

}  // namespace remixlab::service
