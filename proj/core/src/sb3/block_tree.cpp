#include "remixlab/sb3/block_tree.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "remixlab/error.hpp"
#include "remixlab/sb3/opcodes.hpp"

namespace remixlab::sb3 {
namespace {

std::string where(const std::string& sprite, const BlockId& id) {
  return sprite + "/" + id.str();
}

BlockNode to_node(const RawBlock& raw) {
  BlockNode node;
  node.id = raw.id;
  node.opcode = raw.opcode;
  node.fields = raw.fields;
  node.parent = raw.parent;
  node.next = raw.next;
  node.proccode = raw.proccode;
  // Inputs come sorted by slot name, so SUBSTACK precedes SUBSTACK2.
  for (const auto& input : raw.inputs) {
    const BlockId* child = input.block();
    if (child && is_substack_slot(input.slot)) {
      node.substacks.push_back(*child);
    } else {
      node.inputs.push_back(input);
    }
  }
  return node;
}

SpriteForest build_sprite(const SpriteTarget& target) {
  SpriteForest sprite;
  sprite.name = target.name;
  sprite.is_stage = target.is_stage;
  for (const auto& [id, raw] : target.blocks) {
    sprite.nodes.emplace(id, to_node(raw));
  }

  // next-chain cycles first, so A.next = A reports as a cycle rather than
  // as a doubly referenced block.
  std::set<BlockId> finished;
  for (const auto& [id, node] : sprite.nodes) {
    if (finished.count(id)) continue;
    std::set<BlockId> path{id};
    const BlockNode* cur = &node;
    while (cur->next && !finished.count(*cur->next)) {
      auto it = sprite.nodes.find(*cur->next);
      if (it == sprite.nodes.end()) break;
      if (!path.insert(it->first).second) {
        throw Error(Errc::CyclicStack, "next chain loops back on itself",
                    where(sprite.name, it->first));
      }
      cur = &it->second;
    }
    finished.insert(path.begin(), path.end());
  }

  std::map<BlockId, BlockId> referenced_by;
  for (const auto& [id, node] : sprite.nodes) {
    if (node.parent && !sprite.nodes.count(*node.parent)) {
      throw Error(Errc::DanglingReference,
                  "parent " + node.parent->str() + " does not exist",
                  where(sprite.name, id));
    }
    for (const BlockId& child : child_blocks(node)) {
      if (!sprite.nodes.count(child)) {
        throw Error(Errc::DanglingReference,
                    "link to missing block " + child.str(),
                    where(sprite.name, id));
      }
      auto [it, inserted] = referenced_by.emplace(child, id);
      if (!inserted) {
        throw Error(Errc::SchemaViolation,
                    "block " + child.str() + " is referenced by both " +
                        it->second.str() + " and " + id.str(),
                    where(sprite.name, child));
      }
    }
  }

  // Each block has at most one referencing block, so anything unreachable
  // from an unreferenced head sits on a cycle (or hangs below one).
  std::set<BlockId> reached;
  for (const auto& [id, node] : sprite.nodes) {
    if (referenced_by.count(id)) continue;
    sprite.roots.push_back(id);
    std::vector<BlockId> stack{id};
    while (!stack.empty()) {
      BlockId cur = std::move(stack.back());
      stack.pop_back();
      reached.insert(cur);
      for (BlockId& child : child_blocks(sprite.nodes.at(cur))) {
        stack.push_back(std::move(child));
      }
    }
  }
  for (const auto& [id, node] : sprite.nodes) {
    if (!reached.count(id)) {
      throw Error(Errc::CyclicStack, "block is part of a next/parent cycle",
                  where(sprite.name, id));
    }
  }

  for (const auto& [id, node] : sprite.nodes) {
    auto ref = referenced_by.find(id);
    std::optional<BlockId> derived;
    if (ref != referenced_by.end()) derived = ref->second;
    if (node.parent != derived) {
      throw Error(Errc::DanglingReference,
                  "parent field disagrees with the block that references it",
                  where(sprite.name, id));
    }
    if (node.is_hat() && node.parent) {
      throw Error(Errc::SchemaViolation, "hat block nested inside a stack",
                  where(sprite.name, id));
    }
  }
  return sprite;
}

bool references(const BlockNode& parent, const BlockId& child) {
  for (const BlockId& c : child_blocks(parent)) {
    if (c == child) return true;
  }
  return false;
}

}  // namespace

bool BlockNode::is_hat() const noexcept { return sb3::is_hat(opcode); }

const Field* BlockNode::field(std::string_view name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const Input* BlockNode::input(std::string_view slot) const {
  for (const auto& in : inputs) {
    if (in.slot == slot) return &in;
  }
  return nullptr;
}

const BlockNode* SpriteForest::find(const BlockId& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

std::size_t BlockForest::node_count() const {
  std::size_t n = 0;
  for (const auto& s : sprites) n += s.nodes.size();
  return n;
}

std::size_t BlockForest::script_count() const {
  std::size_t n = 0;
  for (const auto& s : sprites) n += s.roots.size();
  return n;
}

BlockForest::Located BlockForest::find(const BlockId& id) const {
  for (const auto& s : sprites) {
    if (const BlockNode* node = s.find(id)) return {&s, node};
  }
  return {};
}

std::vector<BlockId> child_blocks(const BlockNode& node) {
  std::vector<BlockId> out;
  for (const auto& input : node.inputs) {
    if (const BlockId* b = input.block()) out.push_back(*b);
  }
  out.insert(out.end(), node.substacks.begin(), node.substacks.end());
  if (node.next) out.push_back(*node.next);
  return out;
}

BlockForest build_block_tree(const ProjectModel& project) {
  BlockForest forest;
  forest.sprites.reserve(project.targets.size());
  for (const auto& target : project.targets) {
    forest.sprites.push_back(build_sprite(target));
  }
  return forest;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::DanglingParent: return "DanglingParent";
    case ViolationKind::ParentMismatch: return "ParentMismatch";
    case ViolationKind::DanglingLink: return "DanglingLink";
    case ViolationKind::HatWithParent: return "HatWithParent";
    case ViolationKind::RootWithParent: return "RootWithParent";
    case ViolationKind::CyclicNext: return "CyclicNext";
    case ViolationKind::Unreachable: return "Unreachable";
    case ViolationKind::MultiplyReachable: return "MultiplyReachable";
  }
  return "Unknown";
}

std::vector<Violation> validate_block_tree(const BlockForest& forest) {
  struct Keyed {
    std::size_t sprite_index;
    Violation v;
  };
  std::vector<Keyed> found;

  for (std::size_t si = 0; si < forest.sprites.size(); ++si) {
    const SpriteForest& sprite = forest.sprites[si];
    auto report = [&](ViolationKind kind, const BlockId& id,
                      std::string message) {
      found.push_back({si, {kind, sprite.name, id, std::move(message)}});
    };

    for (const auto& [id, node] : sprite.nodes) {
      if (node.parent) {
        const BlockNode* parent = sprite.find(*node.parent);
        if (!parent) {
          report(ViolationKind::DanglingParent, id,
                 "parent " + node.parent->str() + " does not exist");
        } else if (!references(*parent, id)) {
          report(ViolationKind::ParentMismatch, id,
                 "parent " + node.parent->str() +
                     " does not link to this block");
        }
        if (node.is_hat()) {
          report(ViolationKind::HatWithParent, id,
                 "hat block " + node.opcode + " has a parent");
        }
      }
      for (const BlockId& child : child_blocks(node)) {
        const BlockNode* c = sprite.find(child);
        if (!c) {
          report(ViolationKind::DanglingLink, id,
                 "link to missing block " + child.str());
        } else if (c->parent != id) {
          report(ViolationKind::ParentMismatch, child,
                 "linked from " + id.str() + " but its parent field says " +
                     (c->parent ? c->parent->str() : std::string("none")));
        }
      }
    }

    // next-chain cycles, reported once at the smallest id on the cycle.
    std::set<BlockId> on_cycle;
    for (const auto& [id, node] : sprite.nodes) {
      std::vector<BlockId> path;
      std::set<BlockId> seen;
      const BlockNode* cur = &node;
      while (cur && cur->next) {
        if (!seen.insert(cur->id).second) break;
        path.push_back(cur->id);
        cur = sprite.find(*cur->next);
      }
      if (cur && seen.count(cur->id)) {
        auto start = std::find(path.begin(), path.end(), cur->id);
        BlockId smallest = *std::min_element(start, path.end());
        if (on_cycle.insert(smallest).second) {
          report(ViolationKind::CyclicNext, smallest,
                 "next chain loops back on itself");
        }
      }
    }

    std::map<BlockId, int> visits;
    for (const BlockId& root : sprite.roots) {
      const BlockNode* r = sprite.find(root);
      if (!r) {
        report(ViolationKind::DanglingLink, root,
               "script root does not exist");
        continue;
      }
      if (r->parent) {
        report(ViolationKind::RootWithParent, root,
               "script root has parent " + r->parent->str());
      }
      std::vector<BlockId> stack{root};
      while (!stack.empty()) {
        BlockId cur = std::move(stack.back());
        stack.pop_back();
        if (++visits[cur] > 1) continue;
        if (const BlockNode* n = sprite.find(cur)) {
          for (BlockId& child : child_blocks(*n)) {
            if (sprite.find(child)) stack.push_back(std::move(child));
          }
        }
      }
    }
    for (const auto& [id, node] : sprite.nodes) {
      auto it = visits.find(id);
      if (it == visits.end()) {
        report(ViolationKind::Unreachable, id,
               "not reachable from any script root");
      } else if (it->second > 1) {
        report(ViolationKind::MultiplyReachable, id,
               "reachable along more than one path");
      }
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const Keyed& a, const Keyed& b) {
                     return std::tie(a.sprite_index, a.v.block, a.v.kind) <
                            std::tie(b.sprite_index, b.v.block, b.v.kind);
                   });
  std::vector<Violation> out;
  out.reserve(found.size());
  for (auto& k : found) out.push_back(std::move(k.v));
  return out;
}

}  // namespace remixlab::sb3
