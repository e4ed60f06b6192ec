#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "anholkit/spaces.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace anholkit;

namespace {

const BundleChart& tm2() {
  static const BundleChart c(2, 2, Variance::vector);
  return c;
}

NdArray<ScalarField> fields(const BundleChart& chart, std::vector<std::string> text, int rows, int cols) {
  NdArray<ScalarField> a({rows, cols});
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = parse(text[static_cast<std::size_t>(i * cols + j)], chart.context);
  return a;
}

struct Pipeline {
  FieldJets f;
  DConnectionCoeffs conn;
  TorsionComponents T;
  CurvatureComponents R;
  RicciComponents ric;
};

Pipeline run(const GeometrySource& s, ConnectionKind k, const PointU& u) {
  Pipeline p;
  p.f = s.evaluate(u, required_order(s, Stage::curvature));
  p.conn = build_connection(k, p.f);
  p.T = d_torsions(p.conn, p.f.nconn);
  p.R = d_curvatures(p.conn, p.f.nconn);
  p.ric = ricci(p.R, p.f.metric);
  return p;
}

const PointU kU{{0.8, 0.3}, {0.5, -0.7}};

}  // namespace

TEST_CASE("Finsler metric of a Riemannian F is the base metric") {
  FinslerSpace s2(parse("sqrt(y1^2 + sin(x1)^2*y2^2)", tm2().context));
  auto f = s2.evaluate(kU, required_order(s2, Stage::fields));
  Matrix g = f.metric.g_values();
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(std::sin(0.8) * std::sin(0.8)));
  CHECK(max_abs_diff(g, f.metric.h_values()) == 0.0);
}

TEST_CASE("Randers fundamental tensor matches the closed form") {
  FinslerSpace r(parse("sqrt(y1^2 + y2^2) + 0.3*y1", tm2().context));
  auto f = r.evaluate(kU, required_order(r, Stage::fields));
  Matrix a({2, 2}, 0.0);
  a(0, 0) = a(1, 1) = 1.0;
  const std::vector<double> b{0.3, 0.0};
  CHECK(max_abs_diff(f.metric.g_values(), verify::randers_metric(a, b, kU.fiber)) < 1e-14);
}

TEST_CASE("S2 geometry through every connection") {
  FinslerSpace s2(parse("sqrt(y1^2 + sin(x1)^2*y2^2)", tm2().context));
  for (auto k : {ConnectionKind::berwald, ConnectionKind::canonical, ConnectionKind::christoffel}) {
    CAPTURE(to_string(k));
    auto p = run(s2, k, kU);
    CHECK(p.ric.scalar == doctest::Approx(2.0).epsilon(1e-10));
  }
  auto p = run(s2, ConnectionKind::canonical, kU);
  CHECK(p.T.T_h.size() > 0);
  double th = 0.0;
  for (double v : p.T.T_h.data()) th = std::max(th, std::abs(v));
  CHECK(th < 1e-13);
}

TEST_CASE("R_h block is a slice of the frame curvature") {
  auto gl = generalized_lagrange(
      tm2(), fields(tm2(), {"1 + 0.1*x1^2 + 0.2*y1^2", "0.1*x2*y2", "0.1*x2*y2", "2 + 0.3*sin(x1) + 0.1*y2^2"}, 2, 2),
      fields(tm2(), {"0.1*x2*y1", "0.2*y2*x1", "0.05*y1*y2", "0.1*x1"}, 2, 2));
  auto p = run(*gl, ConnectionKind::canonical, kU);
  auto F = frame_curvature(p.conn, p.f.nconn);
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int h = 0; h < 2; ++h)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) d = std::max(d, std::abs(p.R.R_h(i, h, j, k) - F(i, h, k, j)));
  CHECK(d < 1e-12);
  // Antisymmetry in the 2-form pair.
  double anti = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int h = 0; h < 2; ++h) anti = std::max(anti, std::abs(p.R.R_h(i, h, 0, 1) + p.R.R_h(i, h, 1, 0)));
  CHECK(anti < 1e-12);
}

TEST_CASE("canonical connection is metric on a generalized Lagrange space") {
  auto gl = generalized_lagrange(
      tm2(), fields(tm2(), {"1 + 0.1*x1^2 + 0.2*y1^2", "0.1*x2*y2", "0.1*x2*y2", "2 + 0.3*sin(x1) + 0.1*y2^2"}, 2, 2),
      fields(tm2(), {"0.1*x2*y1", "0.2*y2*x1", "0.05*y1*y2", "0.1*x1"}, 2, 2));
  auto f = gl->evaluate(kU, required_order(*gl, Stage::connection));
  CHECK(metricity_residual(canonical_connection(f), f).max() < 1e-12);
  CHECK(verify::anholonomy_residual(*gl, kU, 3) < 1e-11);
}

TEST_CASE("flat Lagrangian and Hamiltonian pipelines vanish") {
  LagrangeSpace lag(parse("y1^2 + y2^2", tm2().context));
  CHECK(verify::flat_zero_residual(lag, ConnectionKind::canonical, kU) < 1e-12);
  BundleChart ct(2, 2, Variance::covector);
  HamiltonSpace ham(parse("p1^2 + 2*p2^2", ct.context));
  CHECK(verify::flat_zero_residual(ham, ConnectionKind::hamilton_canonical, kU) < 1e-12);
}

TEST_CASE("Riemann reduction against the classical oracle") {
  FinslerSpace s2(parse("sqrt(y1^2 + sin(x1)^2*y2^2)", tm2().context));
  auto base = fields(tm2(), {"1", "0", "0", "sin(x1)^2"}, 2, 2);
  auto r = verify::riemann_reduction(s2, base, kU);
  CHECK(r.n_connection < 1e-12);
  CHECK(r.christoffel < 1e-12);
  CHECK(r.riemann < 1e-12);
  CHECK(r.scalar == doctest::Approx(2.0));
  auto c = verify::classical_geometry(base, kU.coords(), 2);
  CHECK(c.scalar == doctest::Approx(2.0));
  CHECK(c.christoffel(0, 1, 1) == doctest::Approx(-std::sin(0.8) * std::cos(0.8)));
}

TEST_CASE("homogeneity cascade on a curved Randers metric") {
  FinslerSpace r(parse("sqrt((1 + 0.25*x1^2)*y1^2 + y2^2) + 0.3*y1", tm2().context));
  auto rep = homogeneity_report(r, {kU, PointU{{-0.2, 0.9}, {-0.4, 0.1}}});
  CHECK(rep.max() < 1e-12);
}

TEST_CASE("points near the null section are not admissible") {
  FinslerSpace flat(parse("sqrt(y1^2 + y2^2)", tm2().context));
  CHECK(flat.admissible(kU));
  CHECK_FALSE(flat.admissible(PointU{{0.0, 0.0}, {0.01, 0.02}}));
}

TEST_CASE("indefinite Hessians are reported") {
  LagrangeSpace lor(parse("y1^2 - y2^2", tm2().context));
  try {
    check_positive_definite(lor, {kU});
    FAIL("expected non_positive_definite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_positive_definite);
  }
}

TEST_CASE("sampler honours margin and positive definiteness") {
  LagrangeSpace lor(parse("y1^2 - 0.5*x1*y2^2", tm2().context));
  SamplerSpec spec;
  spec.seed = 4;
  spec.count = 8;
  spec.box = std::vector<std::pair<double, double>>(4, {-1.0, 1.0});
  spec.null_margin = 0.2;
  SamplerStats stats;
  auto pts = sample_points(lor, spec, &stats);
  REQUIRE(pts.size() == 8);
  for (const auto& u : pts) {
    CHECK(u.x[0] < 0.0);
    CHECK(std::hypot(u.fiber[0], u.fiber[1]) >= 0.2);
  }
  CHECK(stats.rejected_metric > 0);
  CHECK(stats.attempts == 8 + stats.rejected_margin + stats.rejected_metric);
  // Same seed, same points.
  auto again = sample_points(lor, spec);
  CHECK(again[3].coords() == pts[3].coords());
}

TEST_CASE("fiber rotations are symmetries of the Euclidean norm") {
  FinslerSpace e(parse("sqrt(y1^2 + y2^2)", tm2().context));
  CoordinateTransform rot;
  rot.K = fields(tm2(), {"cos(x1)", "-sin(x1)", "sin(x1)", "cos(x1)"}, 2, 2);
  auto r = coordinate_transform_check(e, rot, {kU});
  CHECK(r.f_invariance < 1e-14);
  CHECK(r.metric_covariance < 1e-12);
  // A general fiber map is not a symmetry, but g still pulls back covariantly.
  FinslerSpace randers(parse("sqrt(y1^2 + y2^2) + 0.3*y1", tm2().context));
  CoordinateTransform t;
  t.K = fields(tm2(), {"1 + 0.1*x1", "0.2", "0", "2"}, 2, 2);
  auto g = coordinate_transform_check(randers, t, {kU});
  CHECK(g.f_invariance > 1e-3);
  CHECK(g.metric_covariance < 1e-12);
}

TEST_CASE("almost complex structure of a Finsler space") {
  FinslerSpace s2(parse("sqrt(y1^2 + sin(x1)^2*y2^2)", tm2().context));
  auto r = almost_structure_checks(s2, kU);
  CHECK(r.j_squared < 1e-12);
  CHECK(r.metric_compat < 1e-12);
  CHECK(r.dj < 1e-6);
}

TEST_CASE("the pipeline rejects mismatched dimensions") {
  CHECK_THROWS_AS(FinslerSpace(parse("sqrt(y1^2 + y2^2)", tm2().context)).evaluate(PointU{{0.1}, {1.0, 0.0}}, 2),
                  Error);
}
