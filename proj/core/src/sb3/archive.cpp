#include "remixlab/sb3/archive.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <optional>

#include "remixlab/error.hpp"

namespace remixlab::sb3 {
namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::size_t kEndSize = 22;

[[noreturn]] void fail(const std::string& message, std::size_t offset) {
  throw Error(Errc::MalformedArchive, message,
              "byte " + std::to_string(offset));
}

class Cursor {
 public:
  Cursor(ByteView data, std::size_t pos) : data_(data), pos_(pos) {}

  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] |
                                                 (data_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) |
                      (static_cast<std::uint32_t>(data_[pos_ + 1]) << 8) |
                      (static_cast<std::uint32_t>(data_[pos_ + 2]) << 16) |
                      (static_cast<std::uint32_t>(data_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }

  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (pos_ > data_.size() || data_.size() - pos_ < n) {
      fail("unexpected end of archive", pos_);
    }
  }

  ByteView data_;
  std::size_t pos_;
};

void put16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  }
}

std::string deflate_raw(std::string_view input) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(Errc::IoError, "deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(input.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
  zs.avail_in = static_cast<uInt>(input.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) {
    throw Error(Errc::IoError, "deflate did not finish");
  }
  out.resize(zs.total_out);
  return out;
}

}  // namespace

bool looks_like_zip(ByteView bytes) noexcept {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' &&
         bytes[2] == 3 && bytes[3] == 4;
}

ZipReader::ZipReader(ByteView archive) : data_(archive) {
  if (data_.size() < kEndSize) {
    fail("archive shorter than an end-of-central-directory record", 0);
  }
  // The end record sits in the last 22 + 65535 bytes (trailing comment).
  std::size_t lowest =
      data_.size() > kEndSize + 0xffff ? data_.size() - kEndSize - 0xffff : 0;
  std::optional<std::size_t> end_pos;
  for (std::size_t p = data_.size() - kEndSize + 1; p-- > lowest;) {
    if (Cursor(data_, p).u32() == kEndSig) {
      end_pos = p;
      break;
    }
  }
  if (!end_pos) {
    fail("end-of-central-directory record not found", data_.size());
  }
  Cursor end(data_, *end_pos + 4);
  std::uint16_t disk = end.u16();
  std::uint16_t cd_disk = end.u16();
  end.u16();
  std::uint16_t total = end.u16();
  std::uint32_t cd_size = end.u32();
  std::uint32_t cd_offset = end.u32();
  if (disk != 0 || cd_disk != 0) {
    fail("multi-disk archives are not supported", *end_pos);
  }
  if (cd_offset == 0xffffffffu || total == 0xffff) {
    fail("ZIP64 archives are not supported", *end_pos);
  }
  if (static_cast<std::uint64_t>(cd_offset) + cd_size > *end_pos) {
    fail("central directory lies outside the archive", *end_pos);
  }

  Cursor cd(data_, cd_offset);
  entries_.reserve(total);
  for (std::uint16_t i = 0; i < total; ++i) {
    std::size_t at = cd.pos();
    if (cd.u32() != kCentralSig) {
      fail("bad central directory signature", at);
    }
    Entry e;
    cd.skip(4);
    e.flags = cd.u16();
    e.method = cd.u16();
    cd.skip(4);
    e.crc = cd.u32();
    e.compressed_size = cd.u32();
    e.size = cd.u32();
    std::uint16_t name_len = cd.u16();
    std::uint16_t extra_len = cd.u16();
    std::uint16_t comment_len = cd.u16();
    cd.skip(8);
    e.local_offset = cd.u32();
    e.name = cd.str(name_len);
    cd.skip(static_cast<std::size_t>(extra_len) + comment_len);
    if (cd.pos() > *end_pos) {
      fail("central directory overruns its end record", at);
    }
    entries_.push_back(std::move(e));
  }
}

std::vector<std::string> ZipReader::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

const ZipReader::Entry* ZipReader::find(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

bool ZipReader::contains(std::string_view name) const {
  return find(name) != nullptr;
}

std::string ZipReader::read(std::string_view name) const {
  const Entry* e = find(name);
  if (!e) {
    throw Error(Errc::MalformedArchive,
                "archive has no entry named " + std::string(name));
  }
  if (e->flags & 0x1) {
    fail("encrypted entries are not supported", e->local_offset);
  }
  if (e->size > kMaxEntrySize) {
    fail("entry exceeds the size limit", e->local_offset);
  }
  Cursor local(data_, e->local_offset);
  if (local.u32() != kLocalSig) {
    fail("bad local header signature", e->local_offset);
  }
  local.skip(22);
  std::uint16_t name_len = local.u16();
  std::uint16_t extra_len = local.u16();
  local.skip(static_cast<std::size_t>(name_len) + extra_len);
  std::size_t start = local.pos();
  if (start > data_.size() || data_.size() - start < e->compressed_size) {
    fail("entry data is truncated", start);
  }
  const std::uint8_t* payload = data_.data() + start;

  std::string out;
  if (e->method == 0) {
    if (e->compressed_size != e->size) {
      fail("stored entry has mismatched sizes", start);
    }
    out.assign(reinterpret_cast<const char*>(payload), e->size);
  } else if (e->method == 8) {
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
      fail("inflateInit2 failed", start);
    }
    zs.next_in = const_cast<Bytef*>(payload);
    zs.avail_in = e->compressed_size;
    // One spare byte detects streams that inflate past the declared size.
    std::string buffer(static_cast<std::size_t>(e->size) + 1, '\0');
    zs.next_out = reinterpret_cast<Bytef*>(buffer.data());
    zs.avail_out = static_cast<uInt>(buffer.size());
    int rc = inflate(&zs, Z_FINISH);
    std::size_t produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != e->size) {
      fail("deflate stream is corrupt or has the wrong length", start);
    }
    buffer.resize(produced);
    out = std::move(buffer);
  } else {
    fail("unsupported compression method " + std::to_string(e->method),
         e->local_offset);
  }

  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(out.data()),
              static_cast<uInt>(out.size()));
  if (crc != e->crc) {
    fail("CRC mismatch for " + e->name, start);
  }
  return out;
}

Bytes write_zip(
    const std::vector<std::pair<std::string, std::string>>& entries) {
  // 2024-01-01 00:00:00 in DOS format.
  constexpr std::uint16_t kDosTime = 0;
  constexpr std::uint16_t kDosDate = ((2024 - 1980) << 9) | (1 << 5) | 1;

  Bytes out;
  Bytes central;
  for (const auto& [name, content] : entries) {
    std::string packed = deflate_raw(content);
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(content.data()),
                static_cast<uInt>(content.size()));
    auto offset = static_cast<std::uint32_t>(out.size());

    put32(out, kLocalSig);
    put16(out, 20);
    put16(out, 0);
    put16(out, 8);
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, static_cast<std::uint32_t>(crc));
    put32(out, static_cast<std::uint32_t>(packed.size()));
    put32(out, static_cast<std::uint32_t>(content.size()));
    put16(out, static_cast<std::uint16_t>(name.size()));
    put16(out, 0);
    out.insert(out.end(), name.begin(), name.end());
    out.insert(out.end(), packed.begin(), packed.end());

    put32(central, kCentralSig);
    put16(central, 20);
    put16(central, 20);
    put16(central, 0);
    put16(central, 8);
    put16(central, kDosTime);
    put16(central, kDosDate);
    put32(central, static_cast<std::uint32_t>(crc));
    put32(central, static_cast<std::uint32_t>(packed.size()));
    put32(central, static_cast<std::uint32_t>(content.size()));
    put16(central, static_cast<std::uint16_t>(name.size()));
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put16(central, 0);
    put32(central, 0);
    put32(central, offset);
    central.insert(central.end(), name.begin(), name.end());
  }
  auto cd_offset = static_cast<std::uint32_t>(out.size());
  out.insert(out.end(), central.begin(), central.end());
  put32(out, kEndSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, cd_offset);
  put16(out, 0);
  return out;
}

}  // namespace remixlab::sb3
