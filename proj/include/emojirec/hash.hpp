#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace emojirec {

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::span<const unsigned char> bytes,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64(std::span(reinterpret_cast<const unsigned char*>(s.data()), s.size()));
}

std::string to_hex(std::uint64_t v);

}  // namespace emojirec
