#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace remixlab::util {

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace remixlab::util
