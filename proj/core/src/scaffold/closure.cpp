#include "remixlab/scaffold/closure.hpp"

#include <algorithm>

#include "remixlab/error.hpp"

namespace remixlab::scaffold {

std::string_view to_string(DependencyKind kind) noexcept {
  switch (kind) {
    case DependencyKind::Script: return "script";
    case DependencyKind::Body: return "body";
    case DependencyKind::Else: return "else";
    case DependencyKind::Input: return "input";
  }
  return "script";
}

std::optional<DependencyKind> dependency_kind_from_string(std::string_view s) noexcept {
  for (auto k : {DependencyKind::Script, DependencyKind::Body, DependencyKind::Else,
                 DependencyKind::Input}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

BlockGraphHighlight control_closure(const sb3::BlockForest& forest, const BlockId& target) {
  auto [sprite, node] = forest.find(target);
  if (!node) {
    throw Error(Errc::TargetNotInProject, "no block " + target.str() + " in the project",
                target.str());
  }
  BlockGraphHighlight h;
  h.target = target;
  h.sprite = sprite->name;

  // Walk up from the target; `lower` is the closure member nearest below.
  std::vector<BlockId> upward{target};
  std::vector<DependencyEdge> control;
  const sb3::BlockNode* cur = node;
  BlockId lower = target;
  while (cur->parent) {
    const sb3::BlockNode* p = sprite->find(*cur->parent);
    if (!p) break;
    if (p->next && *p->next == cur->id) {
      cur = p;
      continue;
    }
    auto sub = std::find(p->substacks.begin(), p->substacks.end(), cur->id);
    if (sub != p->substacks.end()) {
      control.push_back({p->id, lower,
                         sub == p->substacks.begin() ? DependencyKind::Body : DependencyKind::Else});
    } else {
      // Reporter plugged into p: p consumes it.
      control.push_back({lower, p->id, DependencyKind::Input});
    }
    upward.push_back(p->id);
    lower = p->id;
    cur = p;
  }
  if (cur->is_hat() && cur->id != lower) {
    control.push_back({cur->id, lower, DependencyKind::Script});
    upward.push_back(cur->id);
  }

  h.generated_block.assign(upward.rbegin(), upward.rend());
  h.edges.assign(control.rbegin(), control.rend());
  for (const auto& in : node->inputs) {
    if (const BlockId* b = in.block()) {
      if (!sprite->find(*b)) continue;
      h.generated_block.push_back(*b);
      h.edges.push_back({*b, target, DependencyKind::Input});
    }
  }
  return h;
}

}  // namespace remixlab::scaffold
