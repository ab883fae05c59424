#pragma once

#include <stdexcept>
#include <string>

namespace lpflow {

enum class ErrorKind {
  InvalidArgument,
  OutOfRange,
  NotDivergenceFree,
  Io,
  Unstable,
};

/// Every precondition failure in the library is reported through this type so
/// the CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lpflow
