#include "remixlab/kb/kb_io.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "remixlab/error.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::kb {
namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "remixlab.kb";
constexpr int kVersion = 1;

[[noreturn]] void bad(std::size_t line, const std::string& message) {
  throw Error(Errc::MalformedKnowledgeBase, message, "line " + std::to_string(line));
}

template <typename T>
T get(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) bad(line, std::string("missing \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    bad(line, std::string("wrong type for \"") + key + "\"");
  }
}

}  // namespace

std::string serialize_kb(const KnowledgeBase& kb) {
  json header;
  header["format"] = kFormat;
  header["version"] = kVersion;
  header["embedder_id"] = kb.embedder_id;
  header["dimension"] = kb.dimension;
  header["threshold"] = kb.threshold;
  header["built_at"] = kb.built_at;
  header["entries"] = kb.entries.size();
  header["idf"] = kb.idf;
  std::string out = header.dump();
  out += '\n';
  for (const auto& e : kb.entries) {
    json j;
    j["id"] = e.id;
    j["text"] = e.text;
    j["context"] = e.context;
    json tags = json::array();
    for (Tag t : e.tags) tags.push_back(std::string(to_string(t)));
    j["tags"] = std::move(tags);
    json idx = json::array(), val = json::array();
    for (std::size_t i = 0; i < e.embedding.size(); ++i) {
      if (e.embedding[i] != 0) {
        idx.push_back(i);
        val.push_back(e.embedding[i]);
      }
    }
    j["embedding"] = {{"index", std::move(idx)}, {"value", std::move(val)}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

KnowledgeBase deserialize_kb(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) bad(1, "empty file");

  json header = json::parse(lines[0], nullptr, false);
  if (header.is_discarded() || !header.is_object()) bad(1, "header is not a JSON object");
  if (get<std::string>(header, "format", 1) != kFormat) bad(1, "unexpected format");
  if (get<int>(header, "version", 1) != kVersion) bad(1, "unsupported version");

  KnowledgeBase kb;
  kb.embedder_id = get<std::string>(header, "embedder_id", 1);
  kb.dimension = get<std::size_t>(header, "dimension", 1);
  kb.threshold = get<double>(header, "threshold", 1);
  kb.built_at = get<std::int64_t>(header, "built_at", 1);
  kb.idf = get<std::vector<double>>(header, "idf", 1);
  auto count = get<std::size_t>(header, "entries", 1);
  if (kb.dimension == 0) bad(1, "dimension must be positive");
  if (!kb.idf.empty() && kb.idf.size() != kb.dimension) bad(1, "idf length differs from dimension");

  std::set<std::string> ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::size_t line = i + 1;
    if (lines[i].empty()) continue;
    json j = json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object()) bad(line, "entry is not a JSON object");
    KnowledgeEntry e;
    e.id = get<std::string>(j, "id", line);
    if (!ids.insert(e.id).second) bad(line, "duplicate entry id " + e.id);
    e.text = get<std::string>(j, "text", line);
    e.context = get<std::string>(j, "context", line);
    for (const auto& t : get<std::vector<std::string>>(j, "tags", line)) {
      auto tag = tag_from_string(t);
      if (!tag) bad(line, "unknown tag " + t);
      e.tags.push_back(*tag);
    }
    std::sort(e.tags.begin(), e.tags.end());
    e.tags.erase(std::unique(e.tags.begin(), e.tags.end()), e.tags.end());
    if (e.tags.empty()) bad(line, "entry has no tags");
    auto emb = j.find("embedding");
    if (emb == j.end() || !emb->is_object()) bad(line, "missing \"embedding\"");
    auto idx = get<std::vector<std::size_t>>(*emb, "index", line);
    auto val = get<std::vector<double>>(*emb, "value", line);
    if (idx.size() != val.size()) bad(line, "embedding index/value length differ");
    e.embedding.assign(kb.dimension, 0.0);
    double norm = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= kb.dimension) bad(line, "embedding index out of range");
      e.embedding[idx[k]] = val[k];
      norm += val[k] * val[k];
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-6) bad(line, "embedding is not unit length");
    kb.entries.push_back(std::move(e));
  }
  if (kb.entries.size() != count) {
    bad(lines.size(), "header announces " + std::to_string(count) + " entries, found " +
                          std::to_string(kb.entries.size()));
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  return deserialize_kb(util::read_text_file(path));
}

void save_kb(const KnowledgeBase& kb, const std::string& path) {
  util::write_file_atomic(path, serialize_kb(kb));
}

}  // namespace remixlab::kb
