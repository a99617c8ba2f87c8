#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strichartz {

enum class ErrorKind {
  InvalidArgument,
  InvalidCluster,
  OutOfRange,
  UnsupportedDimension,
  Overflow,
  DimensionMismatch,
  SingularEvaluation,
  MemoryGuard,
  Instability,
  UnsupportedBackend,
  Caustic,
  QuadratureUnderflow,
  NoContraction,
  LinearSolve,
  FrameMismatch,
  InadmissiblePair,
  DecompositionMismatch,
  WindowTooLong,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI,
/// the verification harness) can map it to an exit status or a report row.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace strichartz
