// Invariants checked over seeded random families.
#include <doctest.h>

#include <cmath>
#include <random>

#include "anholkit/spaces.hpp"
#include "anholkit/spinor.hpp"
#include "checks.hpp"
#include "random_ast.hpp"

using namespace anholkit;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17f", v);
  return buf;
}

// F = sqrt(y^T A y) + b.y with A = M^T M + I and |b| small enough to stay Randers.
struct Randers {
  std::string alpha, beta;
  std::string F() const { return alpha + " + " + beta; }
};

Randers random_randers(std::mt19937_64& rng, bool curved) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  const double m00 = d(rng), m01 = d(rng), m10 = d(rng), m11 = d(rng);
  const double a00 = 1 + m00 * m00 + m10 * m10, a01 = m00 * m01 + m10 * m11, a11 = 1 + m01 * m01 + m11 * m11;
  std::string F = "sqrt((" + num(a00) + (curved ? " + 0.2*sin(x2)^2" : "") + ")*y1^2 + " + num(2 * a01) +
                  "*y1*y2 + " + num(a11) + "*y2^2)";
  return {F, num(0.4 * d(rng)) + "*y1 + " + num(0.4 * d(rng)) + (curved ? "*cos(x1)" : "") + "*y2"};
}

std::vector<PointU> points(const GeometrySource& s, std::uint64_t seed, int count) {
  SamplerSpec spec;
  spec.seed = seed;
  spec.count = count;
  spec.box = std::vector<std::pair<double, double>>(4, {-1.0, 1.0});
  return sample_points(s, spec);
}

}  // namespace

TEST_CASE("constant Minkowski norms are Berwald-flat") {
  // The Cartan tensor of a non-Riemannian norm is nonzero, so only the Berwald connection
  // loses every coefficient; with b = 0 the norm is Euclidean and every connection is flat.
  BundleChart tm(2, 2, Variance::vector);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    const Randers r = random_randers(rng, false);
    FinslerSpace s(parse(r.F(), tm.context));
    FinslerSpace e(parse(r.alpha, tm.context));
    for (const auto& u : points(s, 100 + t, 3)) {
      CHECK(verify::flat_zero_residual(s, ConnectionKind::berwald, u) < 1e-9);
      for (auto k : {ConnectionKind::berwald, ConnectionKind::canonical, ConnectionKind::christoffel})
        CHECK(verify::flat_zero_residual(e, k, u) < 1e-9);
    }
  }
}

TEST_CASE("metricity and homogeneity on random curved Randers spaces") {
  BundleChart tm(2, 2, Variance::vector);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 5; ++t) {
    const std::string F = random_randers(rng, true).F();
    CAPTURE(F);
    FinslerSpace s(parse(F, tm.context));
    auto pts = points(s, 200 + t, 3);
    CHECK(homogeneity_report(s, pts).max() < 1e-9);
    for (const auto& u : pts) {
      auto f = s.evaluate(u, required_order(s, Stage::connection));
      auto c = metricity_residual(canonical_connection(f), f);
      auto b = metricity_residual(berwald_connection(f), f);
      CHECK(c.max() < 1e-8);
      CHECK(std::max(b.hh, b.vv) < 1e-8);
      CHECK(verify::anholonomy_residual(s, u, 300 + t) < 1e-10);
    }
  }
}

TEST_CASE("spinor and tensor scalar curvature agree on random Randers spaces") {
  BundleChart tm(2, 2, Variance::vector);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 3; ++t) {
    FinslerSpace s(parse(random_randers(rng, true).F(), tm.context));
    for (const auto& u : points(s, 400 + t, 2)) {
      auto c = spinor_tensor_cross_check(s, ConnectionKind::canonical, u);
      CHECK(c.scalar_diff <= 1e-6 * (1.0 + std::abs(c.tensor_scalar)));
      CHECK(c.curvature_diff < 1e-8);
    }
  }
}

TEST_CASE("jets agree with finite differences on random expressions") {
  VarContext ctx(1, 2, Variance::vector);
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    ScalarField f = verify::random_ast(ctx, rng, {3, false});
    const std::vector<double> p{d(rng), d(rng), d(rng)};
    CAPTURE(format(f));
    CHECK(verify::ad_fd_residual(f, p, 3) < 1e-5);
  }
}

TEST_CASE("multi-index enumeration") {
  auto all = verify::multi_indices(3, 3);
  CHECK(all.size() == 3 + 6 + 10);
  for (const auto& a : all) {
    int k = 0;
    for (int v : a) k += v;
    CHECK(k >= 1);
    CHECK(k <= 3);
  }
}
