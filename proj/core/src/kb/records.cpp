#include "remixlab/kb/records.hpp"

#include <nlohmann/json.hpp>
#include <set>

#include "remixlab/error.hpp"
#include "remixlab/util/fs.hpp"
#include "remixlab/util/hash.hpp"
#include "remixlab/util/text.hpp"

namespace remixlab::kb {
namespace {

using nlohmann::json;

[[noreturn]] void bad(std::size_t line, const std::string& message) {
  throw Error(Errc::MalformedRecord, message, "line " + std::to_string(line));
}

std::optional<std::string> optional_string(const json& j, const char* key,
                                           std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  if (!it->is_string()) bad(line, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(RecordKind kind) noexcept {
  switch (kind) {
    case RecordKind::Post: return "post";
    case RecordKind::Comment: return "comment";
    case RecordKind::Reply: return "reply";
  }
  return "post";
}

std::optional<RecordKind> record_kind_from_string(std::string_view s) noexcept {
  if (s == "post") return RecordKind::Post;
  if (s == "comment") return RecordKind::Comment;
  if (s == "reply") return RecordKind::Reply;
  return std::nullopt;
}

std::string hash_author(std::string_view author) {
  std::string salted = "remixlab-author:";
  salted += author;
  return util::sha256_hex(salted).substr(0, 16);
}

std::vector<CorpusRecord> parse_records(std::string_view jsonl) {
  std::vector<CorpusRecord> out;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (util::trim(line).empty()) {
      if (end == jsonl.size()) break;
      continue;
    }
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) bad(line_no, "not a JSON object");

    CorpusRecord r;
    auto id = optional_string(j, "id", line_no);
    if (!id || id->empty()) bad(line_no, "missing \"id\"");
    r.id = *id;
    if (!ids.insert(r.id).second) bad(line_no, "duplicate id " + r.id);

    auto kind = optional_string(j, "kind", line_no);
    if (!kind) bad(line_no, "missing \"kind\"");
    auto parsed = record_kind_from_string(*kind);
    if (!parsed) bad(line_no, "unknown kind \"" + *kind + "\"");
    r.kind = *parsed;

    r.project_id = optional_string(j, "project_id", line_no);
    r.parent_id = optional_string(j, "parent_id", line_no);

    auto author = optional_string(j, "author", line_no);
    auto author_hash = optional_string(j, "author_hash", line_no);
    if (author && author_hash) bad(line_no, "both \"author\" and \"author_hash\"");
    if (author) r.author_hash = hash_author(*author);
    if (author_hash) r.author_hash = *author_hash;

    auto text = optional_string(j, "text", line_no);
    if (!text || util::trim(*text).empty()) bad(line_no, "empty \"text\"");
    r.text = *text;
    out.push_back(std::move(r));
    if (end == jsonl.size()) break;
  }
  return out;
}

std::vector<CorpusRecord> load_records(const std::string& path) {
  return parse_records(util::read_text_file(path));
}

std::string serialize_records(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = r.id;
    j["kind"] = std::string(to_string(r.kind));
    if (r.project_id) j["project_id"] = *r.project_id;
    if (r.parent_id) j["parent_id"] = *r.parent_id;
    if (!r.author_hash.empty()) j["author_hash"] = r.author_hash;
    j["text"] = r.text;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace remixlab::kb
