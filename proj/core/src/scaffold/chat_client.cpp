#include <httplib.h>

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "util/http.hpp"

namespace remixlab::scaffold {
namespace {

using util::env_or;

util::SplitUrl split_url(const std::string& url) {
  return util::split_url(url, "/v1/chat/completions");
}

}  // namespace

std::optional<ChatClientConfig> chat_config_from_env() {
  std::string endpoint = env_or("REMIXLAB_LLM_ENDPOINT");
  if (endpoint.empty()) return std::nullopt;
  ChatClientConfig cfg;
  cfg.endpoint = endpoint;
  cfg.api_key = env_or("REMIXLAB_LLM_API_KEY");
  cfg.model = env_or("REMIXLAB_LLM_MODEL", "gpt-4");
  std::string timeout = env_or("REMIXLAB_LLM_TIMEOUT_MS");
  if (!timeout.empty()) cfg.timeout = std::chrono::milliseconds(std::atoll(timeout.c_str()));
  return cfg;
}

ChatClientBackend::ChatClientBackend(ChatClientConfig config) : config_(std::move(config)) {
  split_url(config_.endpoint);
}

std::string ChatClientBackend::generate(Role role, const PromptContext& prompt) {
  auto [base, path] = split_url(config_.endpoint);
  httplib::Client client(base);
  util::apply_timeout(client, config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  nlohmann::json body{
      {"model", config_.model},
      {"temperature", 0},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system}},
        {{"role", "user"}, {"content", prompt.rendered}}}},
  };
  auto res = client.Post(path, headers, body.dump(), "application/json");
  std::string where = std::string(to_string(role)) + " via " + config_.endpoint;
  if (!res) {
    throw Error(Errc::BackendUnavailable, httplib::to_string(res.error()), where);
  }
  if (res->status != 200) {
    throw Error(Errc::BackendUnavailable, "HTTP " + std::to_string(res->status), where);
  }
  auto reply = nlohmann::json::parse(res->body, nullptr, false);
  try {
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::BackendUnavailable, "unexpected completion payload", where);
  }
}

}  // namespace remixlab::scaffold
