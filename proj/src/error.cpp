#include "emojirec/error.hpp"

namespace emojirec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::shape: return "shape";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::config: return "config";
    case ErrorKind::label: return "label";
    case ErrorKind::data: return "data";
    case ErrorKind::format: return "format";
    case ErrorKind::corruption: return "corruption";
    case ErrorKind::determinism: return "determinism";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
      return 1;
    case ErrorKind::numeric:
    case ErrorKind::determinism:
      return 3;
    default:
      return 2;
  }
}

}  // namespace emojirec

#include "emojirec/hash.hpp"

namespace emojirec {

std::string to_hex(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace emojirec
