#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lfecon {

/// FNV-1a over raw bytes; used to stamp outputs with the configuration they
/// came from.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits of fnv1a64.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace lfecon
