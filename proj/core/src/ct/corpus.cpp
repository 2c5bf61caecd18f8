#include "remixlab/ct/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>
#include <variant>

#include "remixlab/sb3/block_tree.hpp"
#include "remixlab/sb3/project.hpp"

namespace remixlab::ct {
namespace {

using Outcome = std::variant<ProjectResult, SkipRecord>;

Outcome scan_one(const std::filesystem::path& path, const Rubric& rubric) {
  try {
    sb3::ProjectModel project = sb3::load_project_file(path);
    sb3::BlockForest forest = sb3::build_block_tree(project);
    ProjectResult r;
    r.path = path;
    r.report = score_ct(forest, rubric);
    r.stats = block_category_stats(forest);
    return r;
  } catch (const Error& e) {
    return SkipRecord{path, e.code(), e.what()};
  } catch (const std::exception& e) {
    return SkipRecord{path, Errc::IoError, e.what()};
  }
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

CorpusScan corpus_scan(const std::vector<std::filesystem::path>& paths,
                       const Rubric& rubric, unsigned threads) {
  std::vector<std::optional<Outcome>> outcomes(paths.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, paths.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      outcomes[i] = scan_one(paths[i], rubric);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CorpusScan scan;
  std::map<Category, std::size_t> sum;
  for (auto& o : outcomes) {
    if (auto* r = std::get_if<ProjectResult>(&*o)) {
      for (Category c : kCategories) sum[c] += r->stats.count(c);
      scan.results.push_back(std::move(*r));
    } else {
      scan.skipped.push_back(std::get<SkipRecord>(std::move(*o)));
    }
  }
  try {
    scan.aggregate = stats_from_counts(sum);
  } catch (const Error&) {
    scan.aggregate_error = Errc::EmptyCorpus;
  }
  return scan;
}

std::vector<std::filesystem::path> list_projects(
    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) {
    throw Error(Errc::IoError, "cannot list directory: " + ec.message(),
                dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".sb3" || ext == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_stats_table(const CorpusScan& scan) {
  std::ostringstream out;
  out << "kind\tproject\ttotal_blocks";
  for (Category c : kCategories) out << '\t' << to_string(c);
  for (Category c : kCategories) out << '\t' << to_string(c) << "_fraction";
  out << "\tct_total\tstatus\n";

  auto row = [&](std::string_view kind, const std::string& name,
                 const CategoryStats& s, const std::string& ct) {
    out << kind << '\t' << name << '\t' << s.total_blocks;
    for (Category c : kCategories) out << '\t' << s.count(c);
    for (Category c : kCategories) out << '\t' << fixed6(s.fraction(c));
    out << '\t' << ct << "\tok\n";
  };
  for (const auto& r : scan.results) {
    row("project", r.path.filename().string(), r.stats,
        std::to_string(r.report.total));
  }
  for (const auto& s : scan.skipped) {
    out << "skip\t" << s.path.filename().string() << '\t' << '-';
    for (std::size_t i = 0; i < 2 * kCategories.size(); ++i) out << "\t-";
    out << "\t-\t" << to_string(s.code) << '\n';
  }
  if (scan.aggregate) {
    row("aggregate", "*", *scan.aggregate, "-");
  } else {
    out << "aggregate\t*\t0";
    for (std::size_t i = 0; i < 2 * kCategories.size(); ++i) out << "\t-";
    out << "\t-\t" << to_string(Errc::EmptyCorpus) << '\n';
  }
  return out.str();
}

}  // namespace remixlab::ct
