#include "anholkit/error.hpp"

namespace anholkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::unknown_identifier: return "UnknownIdentifier";
    case ErrorKind::arity: return "ArityError";
    case ErrorKind::domain: return "DomainError";
    case ErrorKind::singular_matrix: return "SingularMatrix";
    case ErrorKind::singular_fiber_metric: return "SingularFiberMetric";
    case ErrorKind::non_positive_definite: return "NonPositiveDefinite";
    case ErrorKind::rank_deficient_hessian: return "RankDeficientHessian";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::unsupported_valence: return "UnsupportedValence";
    case ErrorKind::unsupported_dimension: return "UnsupportedDimension";
    case ErrorKind::unsupported_signature: return "UnsupportedSignature";
    case ErrorKind::non_invertible: return "NonInvertible";
    case ErrorKind::non_orthonormal_frame: return "NonOrthonormalFrame";
    case ErrorKind::shape_mismatch: return "ShapeMismatch";
    case ErrorKind::factorization_failure: return "FactorizationFailure";
    case ErrorKind::singular_transform: return "SingularTransform";
    case ErrorKind::order_exceeded: return "OrderExceeded";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::validation: return "ValidationError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

ParseError::ParseError(ErrorKind kind, const std::string& message, std::size_t offset, std::string name)
    : Error(kind, message), offset_(offset), name_(std::move(name)) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace anholkit
