#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emojirec {

enum class ErrorKind {
  shape,
  numeric,
  empty_input,
  config,
  label,
  data,
  format,
  corruption,
  determinism,
  io,
};

std::string_view to_string(ErrorKind kind);

// Process exit code for a failure of the given kind: 1 usage/config,
// 2 data, 3 numeric.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace emojirec
