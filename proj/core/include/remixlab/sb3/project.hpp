#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "remixlab/ids.hpp"
#include "remixlab/sb3/archive.hpp"

namespace remixlab::sb3 {

enum class LiteralKind { Number, String, Color, Broadcast, Variable, List };

std::string_view to_string(LiteralKind kind) noexcept;
std::optional<LiteralKind> literal_kind_from_string(std::string_view s) noexcept;

// An input value after shadow flattening. Broadcast, variable and list
// references carry the referenced object's id in `ref`.
struct Literal {
  LiteralKind kind = LiteralKind::String;
  std::string text;
  std::string ref;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using InputRef = std::variant<Literal, BlockId>;

struct Input {
  std::string slot;
  InputRef value;

  const BlockId* block() const { return std::get_if<BlockId>(&value); }
  const Literal* literal() const { return std::get_if<Literal>(&value); }

  friend bool operator==(const Input&, const Input&) = default;
};

struct Field {
  std::string name;
  std::string value;
  std::string ref;

  friend bool operator==(const Field&, const Field&) = default;
};

// A block entry as stored in project.json, with literal inputs already
// normalized. Substack slots are still ordinary inputs at this stage.
struct RawBlock {
  BlockId id;
  std::string opcode;
  std::vector<Input> inputs;
  std::vector<Field> fields;
  std::optional<BlockId> parent;
  std::optional<BlockId> next;
  bool top_level = false;
  std::optional<std::string> proccode;
};

struct VariableDecl {
  std::string name;
  std::string initial;
};

struct ListDecl {
  std::string name;
  std::vector<std::string> items;
};

struct SpriteTarget {
  std::string name;
  bool is_stage = false;
  std::map<BlockId, RawBlock> blocks;
  std::map<std::string, VariableDecl> variables;
  std::map<std::string, ListDecl> lists;
  std::map<std::string, std::string> broadcasts;
};

enum class MediaKind { Costume, Sound };

struct AssetDescriptor {
  std::string name;
  MediaKind kind = MediaKind::Costume;
  std::string file;
};

struct ProjectModel {
  std::vector<SpriteTarget> targets;
  std::string format_version;
  std::map<std::string, AssetDescriptor> asset_index;

  std::size_t block_count() const;
  const SpriteTarget& stage() const;
};

/// Accepts either an .sb3 zip archive or bare project.json text; archives
/// are recognized by their local-header signature.
///
/// Errors: MalformedArchive (unreadable zip, no project.json at the root),
/// MalformedProject (JSON syntax error, location is the byte offset),
/// SchemaViolation (missing or mistyped key, location is the key path;
/// Scratch 2 documents land here too).
ProjectModel load_project(ByteView input);
ProjectModel load_project_text(std::string_view project_json);
ProjectModel load_project_file(const std::filesystem::path& path);

Bytes read_file_bytes(const std::filesystem::path& path);

}  // namespace remixlab::sb3
