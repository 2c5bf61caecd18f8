#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace remixlab::kb {

enum class RecordKind { Post, Comment, Reply };

std::string_view to_string(RecordKind kind) noexcept;
std::optional<RecordKind> record_kind_from_string(std::string_view s) noexcept;

/// One scraped community post, comment or reply. The author is only ever
/// held as a salted hash.
struct CorpusRecord {
  std::string id;
  RecordKind kind = RecordKind::Post;
  std::optional<std::string> project_id;
  std::string author_hash;
  std::optional<std::string> parent_id;
  std::string text;

  bool operator==(const CorpusRecord&) const = default;
};

std::string hash_author(std::string_view author);

/// Line-delimited JSON, one record per line; blank lines are skipped.
/// A clear-text "author" is hashed on the way in. Throws MalformedRecord
/// with "line N" as location.
std::vector<CorpusRecord> parse_records(std::string_view jsonl);
std::vector<CorpusRecord> load_records(const std::string& path);
std::string serialize_records(const std::vector<CorpusRecord>& records);

}  // namespace remixlab::kb
