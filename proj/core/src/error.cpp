#include "strichartz/error.hpp"

namespace strichartz {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidCluster: return "invalid-cluster";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::SingularEvaluation: return "singular-evaluation";
    case ErrorKind::MemoryGuard: return "memory-guard";
    case ErrorKind::Instability: return "instability";
    case ErrorKind::UnsupportedBackend: return "unsupported-backend";
    case ErrorKind::Caustic: return "caustic";
    case ErrorKind::QuadratureUnderflow: return "quadrature-underflow";
    case ErrorKind::NoContraction: return "no-contraction";
    case ErrorKind::LinearSolve: return "linear-solve";
    case ErrorKind::FrameMismatch: return "frame-mismatch";
    case ErrorKind::InadmissiblePair: return "inadmissible-pair";
    case ErrorKind::DecompositionMismatch: return "decomposition-mismatch";
    case ErrorKind::WindowTooLong: return "window-too-long";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace strichartz
