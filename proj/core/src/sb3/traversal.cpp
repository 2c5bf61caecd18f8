#include "remixlab/sb3/traversal.hpp"

#include <unordered_set>
#include <vector>

namespace remixlab::sb3 {

void walk_forest(const BlockForest& forest, ForestVisitor& visitor) {
  for (const SpriteForest& sprite : forest.sprites) {
    visitor.enter_sprite(sprite);
    for (const BlockId& root_id : sprite.roots) {
      const BlockNode* root = sprite.find(root_id);
      if (!root) continue;
      visitor.enter_script(sprite, *root);

      struct Frame {
        const BlockNode* node;
        VisitContext ctx;
      };
      std::vector<Frame> stack;
      std::unordered_set<const BlockNode*> seen;
      stack.push_back({root, {root, nullptr, root, 0, 0, false}});
      while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (!seen.insert(f.node).second) continue;
        visitor.visit_block(sprite, *f.node, f.ctx);

        // Pushed in reverse so pops come out as inputs, substacks, next.
        if (f.node->next) {
          if (const BlockNode* n = sprite.find(*f.node->next)) {
            VisitContext c = f.ctx;
            c.stack_position += 1;
            stack.push_back({n, c});
          }
        }
        for (auto it = f.node->substacks.rbegin();
             it != f.node->substacks.rend(); ++it) {
          if (const BlockNode* n = sprite.find(*it)) {
            stack.push_back({n, {root, f.node, n, f.ctx.depth + 1, 0, false}});
          }
        }
        for (auto it = f.node->inputs.rbegin(); it != f.node->inputs.rend();
             ++it) {
          if (const BlockId* b = it->block()) {
            if (const BlockNode* n = sprite.find(*b)) {
              stack.push_back(
                  {n, {root, f.node, n, f.ctx.depth + 1, 0, true}});
            }
          }
        }
      }
      visitor.leave_script(sprite, *root);
    }
    visitor.leave_sprite(sprite);
  }
}

}  // namespace remixlab::sb3
