#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "anholkit/expr.hpp"
#include "anholkit/linalg.hpp"

namespace anholkit::verify {

// Hyper-dual number a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0; exact first and mixed second derivatives.
struct HyperDual {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  friend HyperDual operator+(const HyperDual& x, const HyperDual& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend HyperDual operator-(const HyperDual& x, const HyperDual& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a, x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
  }
  HyperDual operator-() const { return {-a, -b, -c, -d}; }
};

// f(a + eps) = f(a) + f'(a) eps + 1/2 f''(a) eps^2 applied to the hyper-dual part.
inline HyperDual hd_apply(const HyperDual& x, double f0, double f1, double f2) {
  return {f0, f1 * x.b, f1 * x.c, f1 * x.d + f2 * x.b * x.c};
}

}  // namespace anholkit::verify

namespace anholkit {

template <>
struct Carrier<verify::HyperDual> {
  using H = verify::HyperDual;
  static H constant(const H&, double v) { return {v, 0.0, 0.0, 0.0}; }
  static double value(const H& x) { return x.a; }
  static H divide(const H& x, const H& y) {
    if (y.a == 0.0) fail(ErrorKind::domain, "division by zero");
    return x * verify::hd_apply(y, 1.0 / y.a, -1.0 / (y.a * y.a), 2.0 / (y.a * y.a * y.a));
  }
  static H sqrt(const H& x) {
    if (x.a <= 0.0) fail(ErrorKind::domain, "sqrt at a non-positive value");
    const double s = std::sqrt(x.a);
    return verify::hd_apply(x, s, 0.5 / s, -0.25 / (s * x.a));
  }
  static H exp(const H& x) {
    const double e = std::exp(x.a);
    return verify::hd_apply(x, e, e, e);
  }
  static H log(const H& x) {
    if (x.a <= 0.0) fail(ErrorKind::domain, "log of non-positive value");
    return verify::hd_apply(x, std::log(x.a), 1.0 / x.a, -1.0 / (x.a * x.a));
  }
  static H sin(const H& x) { return verify::hd_apply(x, std::sin(x.a), std::cos(x.a), -std::sin(x.a)); }
  static H cos(const H& x) { return verify::hd_apply(x, std::cos(x.a), -std::sin(x.a), -std::cos(x.a)); }
  static H tan(const H& x) {
    const double t = std::tan(x.a);
    const double s = 1.0 + t * t;
    return verify::hd_apply(x, t, s, 2.0 * t * s);
  }
  static H abs(const H& x) { return x.a < 0.0 ? -x : x; }
};

}  // namespace anholkit

namespace anholkit::verify {

// Value, d_i f, d_j f and d_i d_j f at a point by one hyper-dual evaluation.
struct SecondOrder {
  double value, di, dj, dij;
};
SecondOrder hyper_dual_partials(const ScalarField& f, std::span<const double> point, int i, int j);

// Levi-Civita geometry of a base metric g_ij(x), computed with hyper-dual partials.
// christoffel(i, j, k) = gamma^i_jk; riemann(i, h, j, k) = d_k gamma^i_hj - d_j gamma^i_hk + ...
// (same index order as the R_h block); ricci(i, j) = riemann(k, i, j, k).
struct ClassicalGeometry {
  Matrix g, g_inv;
  NdArray<double> christoffel;
  NdArray<double> riemann;
  Matrix ricci;
  double scalar = 0.0;
};
ClassicalGeometry classical_geometry(const NdArray<ScalarField>& g, std::span<const double> point, int n);

// Closed-form fundamental tensor of F = sqrt(a_ij y^i y^j) + b_i y^i.
Matrix randers_metric(const Matrix& a, std::span<const double> b, std::span<const double> y);

}  // namespace anholkit::verify
