#include "remixlab/sb3/forest_io.hpp"

#include <nlohmann/json.hpp>

#include "remixlab/sb3/opcodes.hpp"

namespace remixlab::sb3 {
namespace {

using nlohmann::json;

json optional_id(const std::optional<BlockId>& id) {
  return id ? json(id->str()) : json(nullptr);
}

json input_json(const Input& input) {
  json j;
  j["slot"] = input.slot;
  if (const BlockId* b = input.block()) {
    j["block"] = b->str();
  } else {
    const Literal& lit = *input.literal();
    json l;
    l["kind"] = std::string(to_string(lit.kind));
    l["text"] = lit.text;
    if (!lit.ref.empty()) l["ref"] = lit.ref;
    j["literal"] = std::move(l);
  }
  return j;
}

}  // namespace

std::string serialize_forest(const BlockForest& forest) {
  json doc;
  doc["format"] = "remixlab.forest";
  doc["version"] = 1;
  json sprites = json::array();
  for (const auto& sprite : forest.sprites) {
    json s;
    s["name"] = sprite.name;
    s["is_stage"] = sprite.is_stage;
    json roots = json::array();
    for (const auto& r : sprite.roots) roots.push_back(r.str());
    s["roots"] = std::move(roots);
    json nodes = json::object();
    for (const auto& [id, node] : sprite.nodes) {
      json n;
      n["opcode"] = node.opcode;
      n["family"] = std::string(to_string(opcode_family(node.opcode)));
      n["parent"] = optional_id(node.parent);
      n["next"] = optional_id(node.next);
      json subs = json::array();
      for (const auto& b : node.substacks) subs.push_back(b.str());
      n["substacks"] = std::move(subs);
      json inputs = json::array();
      for (const auto& in : node.inputs) inputs.push_back(input_json(in));
      n["inputs"] = std::move(inputs);
      json fields = json::array();
      for (const auto& f : node.fields) {
        json fj{{"name", f.name}, {"value", f.value}};
        if (!f.ref.empty()) fj["ref"] = f.ref;
        fields.push_back(std::move(fj));
      }
      n["fields"] = std::move(fields);
      if (node.proccode) n["proccode"] = *node.proccode;
      nodes[id.str()] = std::move(n);
    }
    s["nodes"] = std::move(nodes);
    sprites.push_back(std::move(s));
  }
  doc["sprites"] = std::move(sprites);
  return doc.dump(2) + "\n";
}

}  // namespace remixlab::sb3
