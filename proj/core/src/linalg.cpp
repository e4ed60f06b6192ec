#include "anholkit/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace anholkit {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  const int n = m.extent(0), k = m.extent(1);
  Eigen::MatrixXd e(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) e(i, j) = m(i, j);
  return e;
}

void require_square(const std::vector<int>& shape) {
  if (shape.size() != 2 || shape[0] != shape[1]) fail(ErrorKind::shape_mismatch, "square matrix expected");
}

}  // namespace

Matrix values(const JetMatrix& m) {
  Matrix out(m.shape());
  for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = m.data()[i].value();
  return out;
}

double condition_number(const Matrix& m) {
  require_square(m.shape());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  require_square(m.shape());
  Eigen::MatrixXd e = to_eigen(m);
  Eigen::MatrixXd sym = 0.5 * (e + e.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

JetMatrix inverse(const JetMatrix& m, ErrorKind on_singular) {
  require_square(m.shape());
  const int n = m.extent(0);
  Matrix v = values(m);
  const double cond = condition_number(v);
  if (!(cond <= kMaxConditionNumber))
    fail(on_singular, "matrix is singular or ill-conditioned (condition number " + std::to_string(cond) + ")");
  JetMatrix a = m;
  const Jet& proto = m(0, 0);
  JetMatrix inv({n, n}, Jet(proto.layout(), proto.order(), 0.0));
  for (int i = 0; i < n; ++i) inv(i, i) = Jet(proto.layout(), proto.order(), 1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col).value()) > std::fabs(a(piv, col).value())) piv = r;
    if (a(piv, col).value() == 0.0) fail(on_singular, "zero pivot");
    if (piv != col)
      for (int k = 0; k < n; ++k) {
        std::swap(a(piv, k), a(col, k));
        std::swap(inv(piv, k), inv(col, k));
      }
    Jet r = reciprocal(a(col, col));
    for (int k = 0; k < n; ++k) {
      a(col, k) = a(col, k) * r;
      inv(col, k) = inv(col, k) * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      Jet f = a(row, col);
      for (int k = 0; k < n; ++k) {
        a(row, k) -= f * a(col, k);
        inv(row, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

Matrix inverse(const Matrix& m, ErrorKind on_singular) {
  require_square(m.shape());
  const double cond = condition_number(m);
  if (!(cond <= kMaxConditionNumber))
    fail(on_singular, "matrix is singular or ill-conditioned (condition number " + std::to_string(cond) + ")");
  Eigen::MatrixXd inv = to_eigen(m).fullPivLu().inverse();
  Matrix out(m.shape());
  for (int i = 0; i < m.extent(0); ++i)
    for (int j = 0; j < m.extent(1); ++j) out(i, j) = inv(i, j);
  return out;
}

JetMatrix cholesky(const JetMatrix& m) {
  require_square(m.shape());
  const int n = m.extent(0);
  const Jet& proto = m(0, 0);
  JetMatrix l({n, n}, Jet(proto.layout(), proto.order(), 0.0));
  for (int j = 0; j < n; ++j) {
    Jet d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d.value() > 0.0)) fail(ErrorKind::non_positive_definite, "Cholesky pivot is not positive");
    l(j, j) = sqrt(d);
    Jet r = reciprocal(l(j, j));
    for (int i = j + 1; i < n; ++i) {
      Jet s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s * r;
    }
  }
  return l;
}

double max_abs(const Matrix& m) {
  double r = 0.0;
  for (double x : m.data()) r = std::max(r, std::fabs(x));
  return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.shape() != b.shape()) fail(ErrorKind::shape_mismatch, "shape mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::fabs(a.data()[i] - b.data()[i]));
  return r;
}

}  // namespace anholkit
