#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "remixlab/remix/remix.hpp"
#include "remixlab/scaffold/engine.hpp"

namespace remixlab::service {

struct SessionRecord {
  std::string session_id;
  // sha256 of the uploaded archive; the bytes live in the archive store.
  std::string archive_ref;
  std::string project_name;
  // Holds the learner graph and the reference graph.
  scaffold::DialogueSession dialogue;
  std::vector<remix::NodeProposal> proposals;
  std::int64_t created_at = 0;
  std::int64_t updated_at = 0;

  bool operator==(const SessionRecord&) const = default;
};

/// {"format":"remixlab.session","version":1,...}; see docs/formats.md.
nlohmann::json record_to_json(const SessionRecord& r);
std::string serialize_record(const SessionRecord& r);
/// Errors: MalformedSessionDocument (location is a JSON pointer or
/// "byte N"), including updated_at < created_at.
SessionRecord record_from_json(const nlohmann::json& j);
SessionRecord deserialize_record(std::string_view text);

/// Letters, digits, '-' and '_', 1 to 64 characters.
bool valid_session_id(std::string_view id) noexcept;

class SessionStore {
 public:
  virtual ~SessionStore() = default;
  /// Errors: NotFound, MalformedSessionDocument, StorageUnavailable.
  virtual SessionRecord load(const std::string& id) const = 0;
  /// Errors: InvalidArgument (bad id), StorageUnavailable.
  virtual void save(const SessionRecord& record) = 0;
  /// Sorted ids.
  virtual std::vector<std::string> list() const = 0;
  /// False when there was nothing to remove.
  virtual bool remove(const std::string& id) = 0;
  /// Removes sessions with now - updated_at >= ttl_s; returns their ids.
  virtual std::vector<std::string> expire(std::int64_t ttl_s, std::int64_t now) = 0;
};

/// One "<id>.json" file per session. Saves write a temporary sibling and
/// rename it over the target, so a reader never sees a partial snapshot.
class FileSessionStore : public SessionStore {
 public:
  /// Errors: StorageUnavailable (directory cannot be created).
  explicit FileSessionStore(std::filesystem::path dir);

  SessionRecord load(const std::string& id) const override;
  void save(const SessionRecord& record) override;
  std::vector<std::string> list() const override;
  bool remove(const std::string& id) override;
  std::vector<std::string> expire(std::int64_t ttl_s, std::int64_t now) override;

  /// Test hook run after the temporary file is written and before the
  /// rename; throwing from it simulates a crash at that point.
  std::function<void(const std::filesystem::path& temp)> before_rename;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& id) const;
  std::filesystem::path dir_;
};

}  // namespace remixlab::service
