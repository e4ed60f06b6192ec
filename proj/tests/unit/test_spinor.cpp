#include <doctest.h>

#include <cmath>

#include "anholkit/spaces.hpp"
#include "anholkit/spinor.hpp"

using namespace anholkit;

namespace {

NdArray<ScalarField> fields(const BundleChart& chart, std::vector<std::string> text, int rows, int cols) {
  NdArray<ScalarField> a({rows, cols});
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = parse(text[static_cast<std::size_t>(i * cols + j)], chart.context);
  return a;
}

std::unique_ptr<RawBundle> gl_space() {
  static const BundleChart tm(2, 2, Variance::vector);
  return generalized_lagrange(
      tm, fields(tm, {"1 + 0.1*x1^2 + 0.2*y1^2", "0.1*x2*y2", "0.1*x2*y2", "2 + 0.3*sin(x1) + 0.1*y2^2"}, 2, 2),
      fields(tm, {"0.1*x2*y1", "0.2*y2*x1", "0.05*y1*y2", "0.1*x1"}, 2, 2));
}

const PointU kU{{0.8, 0.3}, {0.5, -0.7}};

}  // namespace

TEST_CASE("orthonormal frame of a block metric") {
  auto gl = gl_space();
  auto f = gl->evaluate(kU, 3);
  auto frame = orthonormal_frame(f.metric);
  CHECK(frame.orthonormality < 1e-14);
  // Blockwise: no mixing between horizontal and vertical directions.
  CHECK(frame.l(0, 2).value() == 0.0);
  CHECK(frame.E(3, 1).value() == 0.0);
}

TEST_CASE("spinor curvature agrees with the tensor route") {
  auto gl = gl_space();
  for (auto norm : {SigmaNormalization::standard, SigmaNormalization::paper}) {
    auto c = spinor_tensor_cross_check(*gl, ConnectionKind::canonical, kU, norm);
    CHECK(c.scalar_diff < 1e-12);
    CHECK(c.curvature_diff < 1e-12);
    CHECK(c.psi_symmetry < 1e-12);
  }
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace s2(parse("sqrt(y1^2 + sin(x1)^2*y2^2)", tm.context));
  auto c = spinor_tensor_cross_check(s2, ConnectionKind::canonical, kU);
  CHECK(c.spinor_scalar == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("Leibniz transfer and the torsion commutator") {
  auto gl = gl_space();
  for (auto k : {ConnectionKind::canonical, ConnectionKind::berwald}) {
    CHECK(leibniz_transfer_residual(*gl, ConnectionKind::canonical, kU, 11) < 1e-10);
    CHECK(torsion_commutator_residual(*gl, k, kU, 11) < 1e-10);
  }
}

TEST_CASE("spinor route needs positive definite blocks") {
  BundleChart tm(2, 2, Variance::vector);
  LagrangeSpace lor(parse("y1^2 - y2^2", tm.context));
  CHECK_THROWS_AS(spinor_tensor_cross_check(lor, ConnectionKind::canonical, kU), Error);
}

TEST_CASE("flat twistor solutions") {
  auto rep = euclidean_d_sigma(2, 2);
  CVector Om = CVector::Ones(rep.spinor_dim()), Pi = CVector::LinSpaced(rep.spinor_dim(), -1.0, 1.0);
  CHECK(twistor_residual(twistor_solution(rep, Om, Pi), rep, {0.1, 0.2, 0.3, 0.4}) < 1e-10);
  SpinorField quad = [Om](const std::vector<double>& x) { return CVector(x[1] * x[2] * Om); };
  CHECK(twistor_residual(quad, rep, {0.1, 0.6, 0.7, 0.4}) > 1e-3);
}
