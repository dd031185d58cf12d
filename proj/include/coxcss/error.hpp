#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxcss {

enum class ErrorKind {
  Parse,
  InvalidInput,
  Structural,
  Overflow,
  CapExceeded,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coxcss
