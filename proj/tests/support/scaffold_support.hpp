#pragma once

#include <deque>
#include <functional>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "remixlab/scaffold/backend.hpp"
#include "remixlab/scaffold/moderation.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::testing {

// Stub backend whose replies for chosen roles come from a queue or a
// function; every call is logged.
class ScriptedBackend : public scaffold::Backend {
 public:
  std::map<scaffold::Role, std::deque<std::string>> queued;
  std::function<std::optional<std::string>(scaffold::Role, const scaffold::PromptContext&)> override_fn;
  std::vector<std::pair<scaffold::Role, std::string>> calls;  // role, reply

  std::string name() const override { return "scripted"; }
  std::string generate(scaffold::Role role, const scaffold::PromptContext& p) override {
    std::string reply;
    auto q = queued.find(role);
    if (q != queued.end() && !q->second.empty()) {
      reply = q->second.front();
      q->second.pop_front();
    } else if (auto r = override_fn ? override_fn(role, p) : std::nullopt) {
      reply = *r;
    } else {
      reply = stub_.generate(role, p);
    }
    calls.emplace_back(role, reply);
    return reply;
  }

 private:
  scaffold::StubBackend stub_;
};

// Records every text the moderator sees; never blocks on its own.
class RecordingModerator : public scaffold::ExternalModerator {
 public:
  std::optional<scaffold::ModerationCategory> check(std::string_view text) override {
    std::lock_guard lock(mu_);
    seen.emplace(text);
    return std::nullopt;
  }
  bool saw(const std::string& text) {
    std::lock_guard lock(mu_);
    return seen.count(text) > 0;
  }
  std::multiset<std::string> seen;

 private:
  std::mutex mu_;
};

// Parent-link walk over the raw project document: the target, its direct
// non-shadow reporter inputs, every ancestor that holds the walk in a
// substack or input slot, and the top block when it is an event hat.
inline std::set<std::string> closure_oracle(const nlohmann::json& blocks, const std::string& target) {
  auto is_block = [&](const nlohmann::json& v) {
    return v.is_string() && blocks.contains(v.get<std::string>()) &&
           blocks[v.get<std::string>()].is_object() &&
           !blocks[v.get<std::string>()].value("shadow", false);
  };
  std::set<std::string> out{target};
  const nlohmann::json inputs = blocks[target].value("inputs", nlohmann::json::object());
  for (auto& [slot, value] : inputs.items()) {
    if (slot.rfind("SUBSTACK", 0) == 0 || !value.is_array() || value.size() < 2) continue;
    if (is_block(value[1])) out.insert(value[1].get<std::string>());
  }
  std::string cur = target;
  while (blocks[cur]["parent"].is_string()) {
    std::string parent = blocks[cur]["parent"];
    const auto& p = blocks[parent];
    if (!(p["next"].is_string() && p["next"] == cur)) out.insert(parent);
    cur = parent;
  }
  std::string op = blocks[cur]["opcode"];
  bool hat = op.find("_when") != std::string::npos || op == "control_start_as_clone" ||
             op == "procedures_definition";
  if (hat) out.insert(cur);
  return out;
}

inline nlohmann::json source_document(const std::string& name) {
  return nlohmann::json::parse(util::read_text_file(src_path(name)));
}

inline std::string first_blocklist_term(const std::string& section) {
  std::string text = util::read_text_file(std::filesystem::path(REMIXLAB_SOURCE_DIR) /
                                          "core/data/blocklist.txt");
  std::string header = "[" + section + "]\n";
  auto at = text.find(header);
  if (at == std::string::npos) return {};
  auto start = at + header.size();
  return text.substr(start, text.find('\n', start) - start);
}

}  // namespace remixlab::testing
