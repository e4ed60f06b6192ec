#pragma once

#include "anholkit/jet.hpp"
#include "anholkit/ndarray.hpp"

namespace anholkit {

inline constexpr double kMaxConditionNumber = 1e12;

using JetMatrix = NdArray<Jet>;
using Matrix = NdArray<double>;

Matrix values(const JetMatrix& m);

// Gauss-Jordan with partial pivoting on the order-0 values; rejects condition numbers above the cap.
JetMatrix inverse(const JetMatrix& m, ErrorKind on_singular = ErrorKind::singular_matrix);
Matrix inverse(const Matrix& m, ErrorKind on_singular = ErrorKind::singular_matrix);

// 2-norm condition number of a symmetric or general square matrix.
double condition_number(const Matrix& m);
// Eigenvalues of the symmetric part, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

// Lower-triangular L with L L^T = m for a positive-definite symmetric matrix of jets.
JetMatrix cholesky(const JetMatrix& m);

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace anholkit
