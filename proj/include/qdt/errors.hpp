#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdt {

enum class ErrorKind {
  InvalidParameter,
  Configuration,
  Topology,
  Solver,
  NonUniqueSteadyState,
  StepSize,
  Lookup,
  UnsupportedRepresentation,
  Precondition,
};

std::string_view to_string(ErrorKind kind);

/// Library error carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) raise(kind, what);
}

}  // namespace qdt
