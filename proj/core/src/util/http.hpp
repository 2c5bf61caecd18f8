#pragma once

#include <chrono>
#include <cstdlib>
#include <string>

#include "remixlab/error.hpp"

namespace remixlab::util {

inline std::string env_or(const char* name, std::string fallback = {}) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

struct SplitUrl {
  std::string base;
  std::string path;
};

// "http://host:port/path" into the client base and the request path.
inline SplitUrl split_url(const std::string& url, const std::string& default_path) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(Errc::ConfigError, "endpoint must start with http:// or https://", url);
  }
  auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, default_path};
  return {url.substr(0, slash), url.substr(slash)};
}

template <typename Client>
void apply_timeout(Client& client, std::chrono::milliseconds timeout) {
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
}

}  // namespace remixlab::util
