#include "remixlab/ct/analyzer.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "remixlab/sb3/traversal.hpp"

namespace remixlab::ct {
namespace {

struct Seen {
  BlockId id;
  std::string opcode;
  std::size_t sprite;
};

struct Script {
  std::size_t sprite;
  BlockId root;
  std::string opcode;
  bool hat;
};

struct Sequence {
  BlockId head;
  std::string opcode;
  std::size_t length;
};

// One DFS pass gathers everything the predicates look at.
class Collector : public sb3::ForestVisitor {
 public:
  std::vector<Seen> blocks;
  std::vector<Script> scripts;
  std::vector<Sequence> chains;
  std::size_t non_stage_sprites = 0;

  void enter_sprite(const sb3::SpriteForest& sprite) override {
    if (!sprite.is_stage) ++non_stage_sprites;
  }
  void leave_sprite(const sb3::SpriteForest&) override { ++sprite_index_; }

  void enter_script(const sb3::SpriteForest&,
                    const sb3::BlockNode& root) override {
    scripts.push_back({sprite_index_, root.id, root.opcode, root.is_hat()});
  }

  void visit_block(const sb3::SpriteForest&, const sb3::BlockNode& node,
                   const sb3::VisitContext& ctx) override {
    blocks.push_back({node.id, node.opcode, sprite_index_});
    const std::size_t length = ctx.stack_position + 1;
    if (ctx.stack_position == 0) {
      chain_of_[ctx.stack_head] = chains.size();
      chains.push_back({node.id, node.opcode, 1});
    } else if (auto it = chain_of_.find(ctx.stack_head); it != chain_of_.end()) {
      auto& chain = chains[it->second];
      chain.length = std::max(chain.length, length);
    }
  }

 private:
  std::size_t sprite_index_ = 0;
  std::unordered_map<const sb3::BlockNode*, std::size_t> chain_of_;
};

bool in(const std::vector<std::string>& ops, std::string_view op) {
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

// Returns the evidence if the row holds, nullopt otherwise.
std::optional<std::vector<Evidence>> evaluate(const RubricRow& row,
                                              const Collector& c) {
  std::vector<Evidence> ev;
  switch (row.kind) {
    case PredicateKind::Any:
      for (const auto& b : c.blocks) {
        if (in(row.opcodes, b.opcode)) ev.push_back({b.id, b.opcode});
      }
      if (ev.empty()) return std::nullopt;
      return ev;
    case PredicateKind::HatScripts: {
      for (const auto& s : c.scripts) {
        if (s.hat && in(row.opcodes, s.opcode)) ev.push_back({s.root, s.opcode});
      }
      if (static_cast<int>(ev.size()) < row.first || ev.empty()) {
        return std::nullopt;
      }
      return ev;
    }
    case PredicateKind::HatScriptsSameSprite: {
      std::map<std::size_t, std::vector<Evidence>> per_sprite;
      for (const auto& s : c.scripts) {
        if (s.hat && in(row.opcodes, s.opcode)) {
          per_sprite[s.sprite].push_back({s.root, s.opcode});
        }
      }
      for (auto& [sprite, list] : per_sprite) {
        if (static_cast<int>(list.size()) >= row.first) {
          ev.insert(ev.end(), list.begin(), list.end());
        }
      }
      if (ev.empty()) return std::nullopt;
      return ev;
    }
    case PredicateKind::ScriptsAndSprites:
      if (static_cast<int>(c.scripts.size()) < row.first ||
          static_cast<int>(c.non_stage_sprites) < row.second ||
          c.scripts.empty()) {
        return std::nullopt;
      }
      for (const auto& s : c.scripts) ev.push_back({s.root, s.opcode});
      return ev;
    case PredicateKind::Sequence:
      for (const auto& ch : c.chains) {
        if (static_cast<int>(ch.length) >= row.first) {
          ev.push_back({ch.head, ch.opcode});
        }
      }
      if (ev.empty()) return std::nullopt;
      return ev;
  }
  return std::nullopt;
}

}  // namespace

int CTReport::score(Dimension d) const {
  auto it = dimension_scores.find(d);
  return it == dimension_scores.end() ? 0 : it->second;
}

CTReport score_ct(const sb3::BlockForest& forest, const Rubric& rubric) {
  Collector collector;
  sb3::walk_forest(forest, collector);

  CTReport report;
  for (Dimension d : kDimensions) {
    report.dimension_scores[d] = 0;
    report.evidence[d] = {};
    for (int level = kMaxLevel; level >= 1; --level) {
      std::vector<Evidence> ev;
      bool holds = false;
      for (const RubricRow* row : rubric.rows_for(d, level)) {
        if (auto found = evaluate(*row, collector)) {
          holds = true;
          ev.insert(ev.end(), found->begin(), found->end());
        }
      }
      if (!holds) continue;
      std::vector<Evidence> unique;
      std::set<std::pair<std::string, std::string>> dedupe;
      for (auto& e : ev) {
        if (unique.size() == kEvidenceCap) break;
        if (dedupe.emplace(e.block.str(), e.opcode).second) {
          unique.push_back(std::move(e));
        }
      }
      report.dimension_scores[d] = level;
      report.evidence[d] = std::move(unique);
      break;
    }
    report.total += report.dimension_scores[d];
  }
  return report;
}

nlohmann::json report_to_json(const CTReport& report) {
  nlohmann::json scores = nlohmann::json::object();
  nlohmann::json evidence = nlohmann::json::object();
  for (Dimension d : kDimensions) {
    std::string key(to_string(d));
    scores[key] = report.score(d);
    nlohmann::json list = nlohmann::json::array();
    if (auto it = report.evidence.find(d); it != report.evidence.end()) {
      for (const auto& e : it->second) {
        list.push_back({{"block", e.block.str()}, {"opcode", e.opcode}});
      }
    }
    evidence[key] = std::move(list);
  }
  return {{"format", "remixlab.ct_report"},
          {"version", 1},
          {"dimension_scores", std::move(scores)},
          {"total", report.total},
          {"evidence", std::move(evidence)}};
}

}  // namespace remixlab::ct
