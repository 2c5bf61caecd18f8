#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace remixlab {

// Opaque string identifier, distinct per Tag so a NodeId cannot be passed
// where a BlockId is expected.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}
  explicit StrongId(std::string_view value) : value_(value) {}
  explicit StrongId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

struct BlockIdTag {};
struct NodeIdTag {};
struct EdgeIdTag {};
struct CanvasIdTag {};

using BlockId = StrongId<BlockIdTag>;
using NodeId = StrongId<NodeIdTag>;
using EdgeId = StrongId<EdgeIdTag>;
using CanvasId = StrongId<CanvasIdTag>;

}  // namespace remixlab

template <typename Tag>
struct std::hash<remixlab::StrongId<Tag>> {
  size_t operator()(const remixlab::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
