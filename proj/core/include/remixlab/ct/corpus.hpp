#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "remixlab/ct/analyzer.hpp"
#include "remixlab/ct/categories.hpp"
#include "remixlab/error.hpp"

namespace remixlab::ct {

struct ProjectResult {
  std::filesystem::path path;
  CTReport report;
  CategoryStats stats;
};

struct SkipRecord {
  std::filesystem::path path;
  Errc code;
  std::string message;
};

struct CorpusScan {
  std::vector<ProjectResult> results;
  std::vector<SkipRecord> skipped;
  // Elementwise sum of per-project counts; absent (with
  // aggregate_error == EmptyCorpus) when no project contributed blocks.
  std::optional<CategoryStats> aggregate;
  std::optional<Errc> aggregate_error;
};

/// Scores every project independently; unreadable or unparseable files
/// become skip records and never abort the scan. Projects may be
/// processed on `threads` workers (0 = hardware concurrency); results and
/// skips always come back in input order.
CorpusScan corpus_scan(const std::vector<std::filesystem::path>& paths,
                       const Rubric& rubric = Rubric::builtin(),
                       unsigned threads = 0);

// *.sb3 and *.json files directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> list_projects(
    const std::filesystem::path& dir);

// Tab-separated table: one row per project, then skip rows, then the
// aggregate row. Column layout is documented in docs/formats.md.
std::string format_stats_table(const CorpusScan& scan);

}  // namespace remixlab::ct
