#include "remixlab/sb3/project.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include <nlohmann/json.hpp>

#include "remixlab/error.hpp"

namespace remixlab::sb3 {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& message, const std::string& path) {
  throw Error(Errc::SchemaViolation, message, path);
}

std::string escape_key(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child_path(const std::string& path, std::string_view key) {
  return path + "/" + escape_key(key);
}

const json& require(const json& obj, std::string_view key,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    schema("missing required key", child_path(path, key));
  }
  return *it;
}

const json& require_object(const json& obj, std::string_view key,
                           const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_object()) schema("expected an object", child_path(path, key));
  return v;
}

std::string require_string(const json& obj, std::string_view key,
                           const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) schema("expected a string", child_path(path, key));
  return v.get<std::string>();
}

// Scratch stores most scalar values as either strings or numbers.
std::string scalar_text(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  if (v.is_null()) return {};
  schema("expected a scalar value", path);
}

std::optional<BlockId> optional_id(const json& obj, std::string_view key,
                                   const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) schema("expected a block id", child_path(path, key));
  return BlockId(it->get<std::string>());
}

// Primitive input arrays: [type, value] or [type, name, id] (+ x, y when
// loose on the workspace).
Literal primitive(const json& arr, const std::string& path) {
  if (!arr.is_array() || arr.size() < 2 || !arr[0].is_number_integer()) {
    schema("malformed primitive input", path);
  }
  int type = arr[0].get<int>();
  Literal lit;
  switch (type) {
    case 4: case 5: case 6: case 7: case 8:
      lit.kind = LiteralKind::Number;
      break;
    case 9:
      lit.kind = LiteralKind::Color;
      break;
    case 10:
      lit.kind = LiteralKind::String;
      break;
    case 11:
      lit.kind = LiteralKind::Broadcast;
      break;
    case 12:
      lit.kind = LiteralKind::Variable;
      break;
    case 13:
      lit.kind = LiteralKind::List;
      break;
    default:
      schema("unknown primitive type " + std::to_string(type), path);
  }
  lit.text = scalar_text(arr[1], path + "/1");
  if (type >= 11) {
    if (arr.size() < 3) schema("reference primitive without an id", path);
    lit.ref = scalar_text(arr[2], path + "/2");
  }
  return lit;
}

// A shadow block referenced from an input collapses into the literal it
// stands for: number/text/colour shadows keep their kind, menus become the
// selected option.
Literal flatten_shadow(const json& block, const std::string& path) {
  std::string opcode = require_string(block, "opcode", path);
  Literal lit;
  auto field_text = [&](std::string_view name) -> std::optional<std::string> {
    auto fields = block.find("fields");
    if (fields == block.end() || !fields->is_object()) return std::nullopt;
    auto f = fields->find(name);
    if (f == fields->end() || !f->is_array() || f->empty()) {
      return std::nullopt;
    }
    return scalar_text((*f)[0], child_path(path, "fields"));
  };
  if (opcode.rfind("math_", 0) == 0) {
    lit.kind = LiteralKind::Number;
    lit.text = field_text("NUM").value_or("");
    return lit;
  }
  if (opcode == "text") {
    lit.text = field_text("TEXT").value_or("");
    return lit;
  }
  if (opcode == "colour_picker") {
    lit.kind = LiteralKind::Color;
    lit.text = field_text("COLOUR").value_or("");
    return lit;
  }
  if (opcode == "event_broadcast_menu") {
    lit.kind = LiteralKind::Broadcast;
    auto fields = block.find("fields");
    if (fields != block.end() && fields->is_object()) {
      auto f = fields->find("BROADCAST_OPTION");
      if (f != fields->end() && f->is_array() && !f->empty()) {
        lit.text = scalar_text((*f)[0], path);
        if (f->size() > 1) lit.ref = scalar_text((*f)[1], path);
      }
    }
    return lit;
  }
  auto fields = block.find("fields");
  if (fields != block.end() && fields->is_object() && !fields->empty()) {
    const json& first = fields->begin().value();
    if (first.is_array() && !first.empty()) {
      lit.text = scalar_text(first[0], child_path(path, "fields"));
      return lit;
    }
  }
  auto mutation = block.find("mutation");
  if (mutation != block.end() && mutation->is_object()) {
    auto proccode = mutation->find("proccode");
    if (proccode != mutation->end() && proccode->is_string()) {
      lit.text = proccode->get<std::string>();
      return lit;
    }
  }
  lit.text = opcode;
  return lit;
}

struct TargetContext {
  const json& blocks;
  std::string path;

  bool is_shadow_block(const std::string& id) const {
    auto it = blocks.find(id);
    return it != blocks.end() && it->is_object() &&
           it->value("shadow", false) == true;
  }
};

std::optional<Input> parse_input(const TargetContext& ctx,
                                 const std::string& slot, const json& value,
                                 const std::string& path) {
  if (!value.is_array() || value.empty() || !value[0].is_number_integer()) {
    schema("malformed input", path);
  }
  if (value.size() < 2 || value[1].is_null()) return std::nullopt;
  const json& payload = value[1];
  Input input;
  input.slot = slot;
  if (payload.is_array()) {
    input.value = primitive(payload, path + "/1");
    return input;
  }
  if (!payload.is_string()) schema("malformed input payload", path + "/1");
  std::string ref = payload.get<std::string>();
  if (ctx.is_shadow_block(ref)) {
    input.value = flatten_shadow(ctx.blocks.at(ref),
                                 child_path(ctx.path, ref));
  } else {
    input.value = BlockId(ref);
  }
  return input;
}

std::vector<Field> parse_fields(const json& block, const std::string& path) {
  std::vector<Field> out;
  auto it = block.find("fields");
  if (it == block.end()) return out;
  if (!it->is_object()) schema("expected an object", path + "/fields");
  for (const auto& [name, value] : it->items()) {
    std::string fpath = child_path(path + "/fields", name);
    if (!value.is_array() || value.empty()) {
      schema("malformed field", fpath);
    }
    Field f;
    f.name = name;
    f.value = scalar_text(value[0], fpath + "/0");
    if (value.size() > 1 && !value[1].is_null()) {
      f.ref = scalar_text(value[1], fpath + "/1");
    }
    out.push_back(std::move(f));
  }
  return out;
}

RawBlock parse_block(const TargetContext& ctx, const std::string& id,
                     const json& block, const std::string& path) {
  RawBlock raw;
  raw.id = BlockId(id);
  raw.opcode = require_string(block, "opcode", path);
  if (raw.opcode.empty()) schema("empty opcode", path + "/opcode");
  raw.parent = optional_id(block, "parent", path);
  raw.next = optional_id(block, "next", path);
  raw.top_level = block.value("topLevel", false);
  auto inputs = block.find("inputs");
  if (inputs != block.end()) {
    if (!inputs->is_object()) schema("expected an object", path + "/inputs");
    for (const auto& [slot, value] : inputs->items()) {
      if (auto input = parse_input(ctx, slot, value,
                                   child_path(path + "/inputs", slot))) {
        raw.inputs.push_back(std::move(*input));
      }
    }
  }
  raw.fields = parse_fields(block, path);
  auto mutation = block.find("mutation");
  if (mutation != block.end() && mutation->is_object()) {
    auto proccode = mutation->find("proccode");
    if (proccode != mutation->end() && proccode->is_string()) {
      raw.proccode = proccode->get<std::string>();
    }
  }
  return raw;
}

// Variable and list reporters dropped loose on the workspace are stored
// as [12|13, name, id, x, y] instead of block objects.
RawBlock parse_loose_reporter(const std::string& id, const json& arr,
                              const std::string& path) {
  Literal lit = primitive(arr, path);
  RawBlock raw;
  raw.id = BlockId(id);
  raw.top_level = true;
  if (lit.kind == LiteralKind::Variable) {
    raw.opcode = "data_variable";
    raw.fields.push_back({"VARIABLE", lit.text, lit.ref});
  } else if (lit.kind == LiteralKind::List) {
    raw.opcode = "data_listcontents";
    raw.fields.push_back({"LIST", lit.text, lit.ref});
  } else {
    schema("only variable and list reporters may be stored as arrays", path);
  }
  return raw;
}

void parse_assets(const json& target, const std::string& path,
                  std::string_view key, MediaKind kind,
                  std::map<std::string, AssetDescriptor>& index) {
  auto it = target.find(key);
  if (it == target.end()) return;
  std::string apath = child_path(path, key);
  if (!it->is_array()) schema("expected an array", apath);
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& asset = (*it)[i];
    std::string ipath = apath + "/" + std::to_string(i);
    if (!asset.is_object()) schema("expected an object", ipath);
    AssetDescriptor desc;
    desc.name = require_string(asset, "name", ipath);
    desc.kind = kind;
    std::string asset_id = require_string(asset, "assetId", ipath);
    if (auto md5 = asset.find("md5ext"); md5 != asset.end() && md5->is_string()) {
      desc.file = md5->get<std::string>();
    }
    index.emplace(asset_id, std::move(desc));
  }
}

SpriteTarget parse_target(const json& target, const std::string& path,
                          std::map<std::string, AssetDescriptor>& assets) {
  if (!target.is_object()) schema("expected an object", path);
  SpriteTarget t;
  t.name = require_string(target, "name", path);
  const json& stage_flag = require(target, "isStage", path);
  if (!stage_flag.is_boolean()) schema("expected a boolean", path + "/isStage");
  t.is_stage = stage_flag.get<bool>();

  std::set<std::string> names;
  if (auto vars = target.find("variables"); vars != target.end()) {
    if (!vars->is_object()) schema("expected an object", path + "/variables");
    for (const auto& [id, value] : vars->items()) {
      std::string vpath = child_path(path + "/variables", id);
      if (!value.is_array() || value.size() < 2 || !value[0].is_string()) {
        schema("malformed variable", vpath);
      }
      VariableDecl decl{value[0].get<std::string>(),
                        scalar_text(value[1], vpath + "/1")};
      if (!names.insert(decl.name).second) {
        schema("duplicate variable name '" + decl.name + "'", vpath);
      }
      t.variables.emplace(id, std::move(decl));
    }
  }
  names.clear();
  if (auto lists = target.find("lists"); lists != target.end()) {
    if (!lists->is_object()) schema("expected an object", path + "/lists");
    for (const auto& [id, value] : lists->items()) {
      std::string lpath = child_path(path + "/lists", id);
      if (!value.is_array() || value.size() < 2 || !value[0].is_string() ||
          !value[1].is_array()) {
        schema("malformed list", lpath);
      }
      ListDecl decl;
      decl.name = value[0].get<std::string>();
      for (const auto& item : value[1]) {
        decl.items.push_back(scalar_text(item, lpath + "/1"));
      }
      if (!names.insert(decl.name).second) {
        schema("duplicate list name '" + decl.name + "'", lpath);
      }
      t.lists.emplace(id, std::move(decl));
    }
  }
  if (auto bc = target.find("broadcasts"); bc != target.end()) {
    if (!bc->is_object()) schema("expected an object", path + "/broadcasts");
    for (const auto& [id, value] : bc->items()) {
      t.broadcasts.emplace(
          id, scalar_text(value, child_path(path + "/broadcasts", id)));
    }
  }

  const json& blocks = require_object(target, "blocks", path);
  TargetContext ctx{blocks, path + "/blocks"};
  for (const auto& [id, block] : blocks.items()) {
    std::string bpath = child_path(ctx.path, id);
    if (block.is_array()) {
      t.blocks.emplace(BlockId(id), parse_loose_reporter(id, block, bpath));
      continue;
    }
    if (!block.is_object()) schema("expected a block object", bpath);
    if (block.value("shadow", false) == true) continue;
    t.blocks.emplace(BlockId(id), parse_block(ctx, id, block, bpath));
  }

  parse_assets(target, path, "costumes", MediaKind::Costume, assets);
  parse_assets(target, path, "sounds", MediaKind::Sound, assets);
  return t;
}

ProjectModel parse_document(const json& doc) {
  if (!doc.is_object()) schema("project document must be an object", "");
  if (!doc.contains("targets") &&
      (doc.contains("objName") || doc.contains("children"))) {
    schema("Scratch 2 projects are not supported", "/objName");
  }
  ProjectModel model;
  const json& meta = require_object(doc, "meta", "");
  model.format_version = require_string(meta, "semver", "/meta");
  if (model.format_version.rfind("3.", 0) != 0) {
    schema("unsupported project format version " + model.format_version,
           "/meta/semver");
  }
  const json& targets = require(doc, "targets", "");
  if (!targets.is_array()) schema("expected an array", "/targets");

  std::set<std::string> sprite_names;
  int stages = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::string path = "/targets/" + std::to_string(i);
    SpriteTarget t = parse_target(targets[i], path, model.asset_index);
    if (t.is_stage) {
      ++stages;
    } else if (!sprite_names.insert(t.name).second) {
      schema("duplicate sprite name '" + t.name + "'", path + "/name");
    }
    model.targets.push_back(std::move(t));
  }
  if (stages != 1) {
    schema("expected exactly one stage target, found " +
               std::to_string(stages),
           "/targets");
  }
  return model;
}

}  // namespace

std::string_view to_string(LiteralKind kind) noexcept {
  switch (kind) {
    case LiteralKind::Number: return "number";
    case LiteralKind::String: return "string";
    case LiteralKind::Color: return "color";
    case LiteralKind::Broadcast: return "broadcast";
    case LiteralKind::Variable: return "variable";
    case LiteralKind::List: return "list";
  }
  return "string";
}

std::optional<LiteralKind> literal_kind_from_string(std::string_view s) noexcept {
  for (auto k : {LiteralKind::Number, LiteralKind::String, LiteralKind::Color,
                 LiteralKind::Broadcast, LiteralKind::Variable,
                 LiteralKind::List}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::size_t ProjectModel::block_count() const {
  std::size_t n = 0;
  for (const auto& t : targets) n += t.blocks.size();
  return n;
}

const SpriteTarget& ProjectModel::stage() const {
  for (const auto& t : targets) {
    if (t.is_stage) return t;
  }
  throw Error(Errc::SchemaViolation, "project has no stage", "/targets");
}

ProjectModel load_project_text(std::string_view project_json) {
  json doc;
  try {
    doc = json::parse(project_json.begin(), project_json.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedProject, e.what(),
                "byte " + std::to_string(e.byte));
  }
  return parse_document(doc);
}

ProjectModel load_project(ByteView input) {
  if (looks_like_zip(input)) {
    ZipReader zip(input);
    if (!zip.contains("project.json")) {
      throw Error(Errc::MalformedArchive,
                  "archive does not contain project.json at its root");
    }
    return load_project_text(zip.read("project.json"));
  }
  return load_project_text(std::string_view(
      reinterpret_cast<const char*>(input.data()), input.size()));
}

Bytes read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoError, "cannot open file", path.string());
  }
  return Bytes(std::istreambuf_iterator<char>(in),
               std::istreambuf_iterator<char>());
}

ProjectModel load_project_file(const std::filesystem::path& path) {
  Bytes bytes = read_file_bytes(path);
  return load_project(bytes);
}

}  // namespace remixlab::sb3
