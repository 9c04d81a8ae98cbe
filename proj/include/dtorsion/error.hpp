#pragma once

#include <stdexcept>
#include <string>

namespace dtorsion {

enum class ErrorKind {
  Parse,        // malformed text input
  Invalid,      // well-formed input that violates a mathematical precondition
  Unsupported,  // recognised but unsupported request (family, option)
  Limit,        // size ceiling exceeded
  Argument,     // bad argument from a caller (index out of range, shape mismatch)
  Io,
  Numerical,    // floating-point step could not be resolved at tolerance
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace dtorsion
