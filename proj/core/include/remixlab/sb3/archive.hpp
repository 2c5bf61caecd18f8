#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace remixlab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

}  // namespace remixlab

namespace remixlab::sb3 {

/// Read-only view over a PKZIP archive held in memory. Supports the stored
/// and deflate methods, which is everything the Scratch editor writes.
/// Any structural problem (truncation, bad signatures, CRC mismatch,
/// encryption, ZIP64) raises Error{Errc::MalformedArchive}.
class ZipReader {
 public:
  static constexpr std::size_t kMaxEntrySize = 256u << 20;

  explicit ZipReader(ByteView archive);

  std::vector<std::string> names() const;
  bool contains(std::string_view name) const;
  std::string read(std::string_view name) const;

 private:
  struct Entry {
    std::string name;
    std::uint16_t method = 0;
    std::uint16_t flags = 0;
    std::uint32_t crc = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t size = 0;
    std::uint32_t local_offset = 0;
  };

  const Entry* find(std::string_view name) const;

  ByteView data_;
  std::vector<Entry> entries_;
};

bool looks_like_zip(ByteView bytes) noexcept;

/// Writes a deflate-compressed archive. Timestamps are fixed so identical
/// inputs give identical bytes.
Bytes write_zip(const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace remixlab::sb3
