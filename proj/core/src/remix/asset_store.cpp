#include "remixlab/remix/asset_store.hpp"

#include <algorithm>
#include <system_error>

#include "remixlab/error.hpp"
#include "remixlab/util/fs.hpp"

namespace remixlab::remix {
namespace {

constexpr std::string_view kExtension = ".png";

bool is_digest(std::string_view s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

AssetStore::AssetStore(std::filesystem::path root) : root_(std::move(root)) {}

std::string AssetStore::ref_for(std::string_view hash) {
  if (!is_digest(hash)) {
    throw Error(Errc::InvalidArgument, "asset name must be a sha256 hex digest",
                std::string(hash));
  }
  return std::string(hash.substr(0, 2)) + "/" + std::string(hash) + std::string(kExtension);
}

std::filesystem::path AssetStore::path_of(std::string_view ref) const {
  // Only refs produced by ref_for are accepted, which also rules out
  // path traversal.
  auto slash = ref.find('/');
  bool ok = slash == 2 && ref.size() == 3 + 64 + kExtension.size() &&
            ref.substr(ref.size() - kExtension.size()) == kExtension;
  std::string_view hash = ok ? ref.substr(3, 64) : std::string_view{};
  if (!ok || !is_digest(hash) || ref.substr(0, 2) != hash.substr(0, 2)) {
    throw Error(Errc::InvalidArgument, "malformed asset reference", std::string(ref));
  }
  return root_ / std::string(ref.substr(0, 2)) / std::string(ref.substr(3));
}

bool AssetStore::contains(std::string_view ref) const {
  std::error_code ec;
  return std::filesystem::is_regular_file(path_of(ref), ec);
}

std::string AssetStore::put(std::string_view hash, std::string_view bytes) {
  std::string ref = ref_for(hash);
  std::filesystem::path target = path_of(ref);
  std::error_code ec;
  if (std::filesystem::is_regular_file(target, ec)) return ref;
  std::filesystem::create_directories(target.parent_path(), ec);
  if (ec) {
    throw Error(Errc::StorageUnavailable, "cannot create asset directory: " + ec.message(),
                target.parent_path().string());
  }
  try {
    util::write_file_atomic(target, bytes);
  } catch (const Error& e) {
    throw Error(Errc::StorageUnavailable, e.detail(), e.location());
  }
  return ref;
}

std::optional<std::string> AssetStore::read(std::string_view ref) const {
  std::filesystem::path p = path_of(ref);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) return std::nullopt;
  try {
    return util::read_text_file(p);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace remixlab::remix
