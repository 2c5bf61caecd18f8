#include "remixlab/service/session_store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <system_error>

#include "remixlab/error.hpp"
#include "remixlab/scaffold/session_io.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::service {
namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "remixlab.session";
constexpr std::string_view kSuffix = ".json";

[[noreturn]] void malformed(const std::string& message, const std::string& where) {
  throw Error(Errc::MalformedSessionDocument, message, where);
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) malformed("missing key", std::string("/") + key);
  return *it;
}

std::string string_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) malformed("expected a string", std::string("/") + key);
  return v.get<std::string>();
}

std::int64_t int_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_integer()) malformed("expected an integer", std::string("/") + key);
  return v.get<std::int64_t>();
}

}  // namespace

json record_to_json(const SessionRecord& r) {
  json proposals = json::array();
  for (const auto& p : r.proposals) proposals.push_back(remix::proposal_to_json(p));
  return {{"format", kFormat},
          {"version", 1},
          {"session_id", r.session_id},
          {"archive_ref", r.archive_ref},
          {"project_name", r.project_name},
          {"created_at", r.created_at},
          {"updated_at", r.updated_at},
          {"dialogue", scaffold::dialogue_to_json(r.dialogue)},
          {"proposals", std::move(proposals)}};
}

std::string serialize_record(const SessionRecord& r) {
  return record_to_json(r).dump(2) + "\n";
}

SessionRecord record_from_json(const json& j) {
  if (!j.is_object()) malformed("session document must be an object", "");
  if (string_member(j, "format") != kFormat) malformed("not a remixlab.session document", "/format");
  if (int_member(j, "version") != 1) malformed("unsupported version", "/version");
  SessionRecord r;
  r.session_id = string_member(j, "session_id");
  if (!valid_session_id(r.session_id)) malformed("invalid session id", "/session_id");
  r.archive_ref = string_member(j, "archive_ref");
  r.project_name = string_member(j, "project_name");
  r.created_at = int_member(j, "created_at");
  r.updated_at = int_member(j, "updated_at");
  if (r.updated_at < r.created_at) malformed("updated_at precedes created_at", "/updated_at");
  r.dialogue = scaffold::dialogue_from_json(member(j, "dialogue"), "/dialogue");
  if (r.dialogue.session_id != r.session_id) {
    malformed("dialogue belongs to another session", "/dialogue/session_id");
  }
  const json& proposals = member(j, "proposals");
  if (!proposals.is_array()) malformed("expected an array", "/proposals");
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    try {
      r.proposals.push_back(remix::proposal_from_json(proposals[i]));
    } catch (const Error& e) {
      malformed(e.detail(), "/proposals/" + std::to_string(i) + e.location());
    }
  }
  return r;
}

SessionRecord deserialize_record(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("invalid JSON", "byte " + std::to_string(e.byte));
  }
  return record_from_json(j);
}

bool valid_session_id(std::string_view id) noexcept {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_';
  });
}

FileSessionStore::FileSessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw Error(Errc::StorageUnavailable, "cannot create session directory", dir_.string());
  }
}

std::filesystem::path FileSessionStore::path_for(const std::string& id) const {
  return dir_ / (id + std::string(kSuffix));
}

SessionRecord FileSessionStore::load(const std::string& id) const {
  if (!valid_session_id(id)) throw Error(Errc::NotFound, "no such session", id);
  std::filesystem::path p = path_for(id);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) throw Error(Errc::NotFound, "no such session", id);
  std::string text;
  try {
    text = util::read_text_file(p);
  } catch (const Error& e) {
    throw Error(Errc::StorageUnavailable, e.detail(), e.location());
  }
  return deserialize_record(text);
}

void FileSessionStore::save(const SessionRecord& record) {
  if (!valid_session_id(record.session_id)) {
    throw Error(Errc::InvalidArgument, "invalid session id", record.session_id);
  }
  static std::atomic<unsigned> counter{0};
  std::filesystem::path target = path_for(record.session_id);
  std::filesystem::path temp = target;
  temp += ".tmp" + std::to_string(counter++);
  std::string content = serialize_record(record);
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(temp, ignored);
      throw Error(Errc::StorageUnavailable, "cannot write session file", temp.string());
    }
  }
  if (before_rename) before_rename(temp);
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(temp, ignored);
    throw Error(Errc::StorageUnavailable, "cannot rename session file: " + ec.message(),
                target.string());
  }
}

std::vector<std::string> FileSessionStore::list() const {
  std::vector<std::string> ids;
  std::error_code ec;
  std::filesystem::directory_iterator it(dir_, ec);
  if (ec) throw Error(Errc::StorageUnavailable, "cannot list sessions", dir_.string());
  for (const auto& entry : it) {
    std::string name = entry.path().filename().string();
    if (name.size() <= kSuffix.size() || !name.ends_with(kSuffix)) continue;
    std::string id = name.substr(0, name.size() - kSuffix.size());
    if (valid_session_id(id)) ids.push_back(std::move(id));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool FileSessionStore::remove(const std::string& id) {
  if (!valid_session_id(id)) return false;
  std::error_code ec;
  bool removed = std::filesystem::remove(path_for(id), ec);
  if (ec) throw Error(Errc::StorageUnavailable, "cannot remove session", id);
  return removed;
}

std::vector<std::string> FileSessionStore::expire(std::int64_t ttl_s, std::int64_t now) {
  std::vector<std::string> removed;
  for (const std::string& id : list()) {
    std::int64_t updated = 0;
    try {
      updated = load(id).updated_at;
    } catch (const Error& e) {
      // Unreadable snapshots are left for an operator to inspect.
      if (e.code() == Errc::MalformedSessionDocument) continue;
      throw;
    }
    if (now - updated >= ttl_s && remove(id)) removed.push_back(id);
  }
  return removed;
}

}  // namespace remixlab::service
