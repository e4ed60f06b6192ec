#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anholkit {

enum class ErrorKind {
  syntax,
  unknown_identifier,
  arity,
  domain,
  singular_matrix,
  singular_fiber_metric,
  non_positive_definite,
  rank_deficient_hessian,
  dimension_mismatch,
  unsupported_valence,
  unsupported_dimension,
  unsupported_signature,
  non_invertible,
  non_orthonormal_frame,
  shape_mismatch,
  factorization_failure,
  singular_transform,
  order_exceeded,
  invalid_argument,
  validation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t offset, std::string name = {});
  std::size_t offset() const { return offset_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace anholkit
