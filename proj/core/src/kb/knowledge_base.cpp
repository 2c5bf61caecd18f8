#include "remixlab/kb/knowledge_base.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "remixlab/error.hpp"

namespace remixlab::kb {
namespace {

constexpr std::string_view kContextSeparator = "\n---\n";

std::string entry_id(std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "k%06zu", index + 1);
  return buf;
}

bool has_context(const std::string& merged, const std::string& context) {
  if (merged == context) return true;
  std::string sep(kContextSeparator);
  return merged.find(sep + context + sep) != std::string::npos ||
         merged.starts_with(context + sep) || merged.ends_with(sep + context);
}

}  // namespace

const KnowledgeEntry* KnowledgeBase::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

HashedTfIdfEmbedder KnowledgeBase::embedder() const {
  if (idf.empty()) {
    throw Error(Errc::EmbedderMismatch,
                "knowledge base was built with embedder " + embedder_id +
                    ", which cannot be reconstructed");
  }
  HashedTfIdfEmbedder e(idf);
  if (e.id() != embedder_id) {
    throw Error(Errc::EmbedderMismatch, "stored weights do not match embedder id " +
                                            embedder_id);
  }
  return e;
}

KnowledgeBase dedup(const std::vector<Candidate>& candidates,
                    const Embedder& embedder, double threshold,
                    std::int64_t built_at) {
  if (!(threshold > 0 && threshold <= 1)) {
    throw Error(Errc::InvalidArgument, "threshold must lie in (0, 1]");
  }
  KnowledgeBase kb;
  kb.embedder_id = embedder.id();
  kb.dimension = embedder.dimension();
  kb.threshold = threshold;
  kb.built_at = built_at;
  for (const auto& c : candidates) {
    Embedding v = embedder.embed(c.sentence);
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) continue;
    KnowledgeEntry* home = nullptr;
    for (auto& e : kb.entries) {
      if (cosine(e.embedding, v) >= threshold) {
        home = &e;
        break;
      }
    }
    if (home) {
      home->tags = tag_union(home->tags, c.tags);
      if (!c.context.empty() && !has_context(home->context, c.context)) {
        if (!home->context.empty()) home->context += kContextSeparator;
        home->context += c.context;
      }
      continue;
    }
    kb.entries.push_back({entry_id(kb.entries.size()), c.sentence, c.context,
                          c.tags, std::move(v)});
  }
  return kb;
}

std::int64_t resolve_built_at(const std::optional<std::int64_t>& explicit_value) {
  if (explicit_value) return *explicit_value;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 0;
}

KnowledgeBase build_knowledge_base(const std::vector<CorpusRecord>& records,
                                   const BuildOptions& options) {
  LexiconExtractor fallback;
  const SentenceExtractor& extractor = options.extractor ? *options.extractor : fallback;
  std::vector<Candidate> candidates = filter_length(extract_knowledge(records, extractor));
  std::vector<std::string> docs;
  docs.reserve(candidates.size());
  for (const auto& c : candidates) docs.push_back(c.sentence);
  HashedTfIdfEmbedder embedder = HashedTfIdfEmbedder::fit(docs, options.dimension);
  KnowledgeBase kb = dedup(candidates, embedder, options.threshold,
                           resolve_built_at(options.built_at));
  kb.idf = embedder.idf();
  return kb;
}

std::vector<Retrieved> retrieve(const KnowledgeBase& kb, const Embedder& embedder,
                                std::string_view query, std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  if (embedder.id() != kb.embedder_id) {
    throw Error(Errc::EmbedderMismatch, "query embedder " + embedder.id() +
                                            " differs from " + kb.embedder_id);
  }
  Embedding q = embedder.embed(query);
  std::vector<Retrieved> all;
  all.reserve(kb.entries.size());
  if (q.size() != kb.dimension) {
    throw Error(Errc::EmbedderMismatch, "query embedding has the wrong dimension");
  }
  // Both sides are unit length (or zero), so the dot product is the cosine.
  for (const auto& e : kb.entries) {
    double dot = 0;
    for (std::size_t i = 0; i < q.size(); ++i) dot += q[i] * e.embedding[i];
    all.push_back({&e, std::clamp(dot, -1.0, 1.0)});
  }
  auto better = [](const Retrieved& a, const Retrieved& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.entry->id < b.entry->id;
  };
  std::size_t n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n),
                    all.end(), better);
  all.resize(n);
  return all;
}

std::vector<Retrieved> retrieve(const KnowledgeBase& kb, std::string_view query,
                                std::size_t k) {
  return retrieve(kb, kb.embedder(), query, k);
}

}  // namespace remixlab::kb
