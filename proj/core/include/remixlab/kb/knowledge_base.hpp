#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remixlab/kb/embedder.hpp"
#include "remixlab/kb/extract.hpp"

namespace remixlab::kb {

struct KnowledgeEntry {
  std::string id;
  std::string text;
  std::string context;
  TagSet tags;
  Embedding embedding;

  bool operator==(const KnowledgeEntry&) const = default;
};

inline constexpr double kDefaultThreshold = 0.9;

struct KnowledgeBase {
  std::vector<KnowledgeEntry> entries;
  std::string embedder_id;
  std::size_t dimension = kDefaultDimension;
  double threshold = kDefaultThreshold;
  std::int64_t built_at = 0;
  /// Weights of the default embedder; empty when another embedder built it.
  std::vector<double> idf;

  const KnowledgeEntry* find(std::string_view id) const;
  /// Rebuilds the embedder that produced the entries. Throws
  /// EmbedderMismatch when the base was not built with the default one.
  HashedTfIdfEmbedder embedder() const;

  bool operator==(const KnowledgeBase&) const = default;
};

/// Greedy clustering in input order. A candidate joins the first entry
/// whose representative has cosine >= threshold, merging its context and
/// tags; otherwise it opens a new entry. Candidates without tokens are
/// dropped. Throws InvalidArgument unless 0 < threshold <= 1.
KnowledgeBase dedup(const std::vector<Candidate>& candidates,
                    const Embedder& embedder, double threshold,
                    std::int64_t built_at = 0);

struct BuildOptions {
  double threshold = kDefaultThreshold;
  /// Falls back to $SOURCE_DATE_EPOCH, then 0.
  std::optional<std::int64_t> built_at;
  std::size_t dimension = kDefaultDimension;
  const SentenceExtractor* extractor = nullptr;
};

std::int64_t resolve_built_at(const std::optional<std::int64_t>& explicit_value);

/// extract, filter_length, fit the default embedder on the survivors, dedup.
KnowledgeBase build_knowledge_base(const std::vector<CorpusRecord>& records,
                                   const BuildOptions& options = {});

struct Retrieved {
  const KnowledgeEntry* entry = nullptr;
  double score = 0;
};

/// Top k by cosine, descending, ties by entry id ascending. Throws
/// EmbedderMismatch when the embedder id differs from the base's and
/// InvalidArgument when k is 0.
std::vector<Retrieved> retrieve(const KnowledgeBase& kb,
                                const Embedder& embedder,
                                std::string_view query, std::size_t k = 3);
std::vector<Retrieved> retrieve(const KnowledgeBase& kb, std::string_view query,
                                std::size_t k = 3);

}  // namespace remixlab::kb
