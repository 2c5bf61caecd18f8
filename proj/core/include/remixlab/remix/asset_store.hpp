#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace remixlab::remix {

/// Files live at <root>/<first two hex digits>/<hash>.png and are referred
/// to by "<first two hex digits>/<hash>.png". Writes go through a temporary
/// sibling and a rename, so concurrent writers of the same asset are safe.
class AssetStore {
 public:
  explicit AssetStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Errors: InvalidArgument (not a lowercase sha256 hex digest).
  static std::string ref_for(std::string_view hash);

  bool contains(std::string_view ref) const;
  /// Keeps an existing file untouched. Returns the ref.
  /// Errors: InvalidArgument, StorageUnavailable.
  std::string put(std::string_view hash, std::string_view bytes);
  std::optional<std::string> read(std::string_view ref) const;
  /// Errors: InvalidArgument (malformed ref).
  std::filesystem::path path_of(std::string_view ref) const;

 private:
  std::filesystem::path root_;
};

}  // namespace remixlab::remix
