#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "anholkit/sigma.hpp"
#include "anholkit/spaces.hpp"
#include "anholkit/spinor.hpp"
#include "checks.hpp"
#include "clifford_suite.hpp"
#include "commands.hpp"
#include "oracles.hpp"
#include "random_ast.hpp"
#include "runner.hpp"

namespace anholkit::verify {

namespace {

using report::parallel_for;

struct Criterion {
  int id;
  const char* name;
  const char* suite;
  const char* title;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "flat_vanishing", "geometry", "Euclidean Finsler spaces have vanishing torsion and curvature"},
      {2, "riemann_reduction", "geometry", "S2 Finsler space reduces to the classical Riemann geometry"},
      {3, "homogeneity", "geometry", "Randers homogeneity cascade"},
      {4, "ad_fd", "geometry", "jets against finite differences and the closed-form Randers metric"},
      {5, "metricity", "geometry", "canonical and Berwald metricity on S2 and Randers"},
      {6, "anholonomy", "geometry", "[delta_i, delta_j] = Omega^a_ij d_a on polynomials"},
      {7, "duality", "geometry", "cotangent pipeline on Cartan and Hamilton spaces"},
      {8, "clifford_algebra", "clifford", "matrix representations, spinor norm and double cover"},
      {9, "epsilon", "clifford", "epsilon factorization and mod-8 symmetry classes"},
      {10, "metric_reconstruction", "clifford", "block metric from frame sigma matrices"},
      {11, "spinor_tensor", "spinor", "spinor and tensor scalar curvature agree"},
      {12, "twistor", "clifford", "flat twistor solutions and a non-solution control"},
      {13, "tooling", "tooling", "parser round trip, report determinism and exit codes"},
  };
  return list;
}

// Accumulates sub-checks for one criterion.
class Recorder {
 public:
  explicit Recorder(double scale) : scale_(scale) {}

  void max(const std::string& name, double measured, double tolerance) {
    const double tol = tolerance * scale_;
    checks_.push_back({name, measured, tol, false, std::isfinite(measured) && measured <= tol});
  }
  // Controls are thresholds the measurement has to exceed; they are not scaled.
  void above(const std::string& name, double measured, double threshold) {
    checks_.push_back({name, measured, threshold, true, std::isfinite(measured) && measured > threshold});
  }
  void flag(const std::string& name, bool ok) { checks_.push_back({name, ok ? 0.0 : 1.0, 0.0, false, ok}); }

  std::vector<SubCheck> take() { return std::move(checks_); }

 private:
  double scale_;
  std::vector<SubCheck> checks_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScalarField field(const std::string& text, const BundleChart& chart) { return parse(text, chart.context); }

NdArray<ScalarField> fields(const BundleChart& chart, const std::vector<std::string>& text, int rows, int cols) {
  NdArray<ScalarField> a({rows, cols});
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = parse(text[static_cast<std::size_t>(i * cols + j)], chart.context);
  return a;
}

std::vector<PointU> sample(const GeometrySource& space, std::uint64_t seed, int count,
                           std::vector<std::pair<double, double>> box, double margin) {
  SamplerSpec spec;
  spec.seed = seed;
  spec.count = count;
  spec.box = std::move(box);
  spec.null_margin = margin;
  return sample_points(space, spec);
}

std::vector<std::pair<double, double>> unit_box(int dim) { return std::vector<std::pair<double, double>>(dim, {-1.0, 1.0}); }

// Base coordinate x1 kept away from the coordinate poles of the sphere.
std::vector<std::pair<double, double>> sphere_box() {
  return {{0.4, std::numbers::pi - 0.4}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
}

// max over points of f(point), evaluated in parallel and reduced in index order.
double max_over(const std::vector<PointU>& points, int jobs, const std::function<double(const PointU&, int)>& f) {
  std::vector<double> r(points.size(), 0.0);
  parallel_for(static_cast<int>(points.size()), jobs, [&](int i) {
    try {
      r[static_cast<std::size_t>(i)] = f(points[static_cast<std::size_t>(i)], i);
    } catch (const std::exception&) {
      r[static_cast<std::size_t>(i)] = std::nan("");
    }
  });
  double m = points.empty() ? std::nan("") : 0.0;
  for (double v : r) m = std::isnan(v) || std::isnan(m) ? std::nan("") : std::max(m, v);
  return m;
}

const char* kSphere = "sqrt(y1^2 + sin(x1)^2*y2^2)";
const char* kRanders = "sqrt((1 + 0.25*x1^2)*y1^2 + y2^2) + 0.3*y1";

// ---------------------------------------------------------------------------

void flat_vanishing(Recorder& rec, const AcceptanceOptions& o) {
  for (int n : {2, 3}) {
    BundleChart tm(n, n, Variance::vector);
    std::string F = "sqrt(y1^2";
    for (int i = 2; i <= n; ++i) F += " + y" + std::to_string(i) + "^2";
    FinslerSpace space(field(F + ")", tm));
    auto points = sample(space, mix(o.seed, 100 + n), 25, unit_box(2 * n), kDefaultNullMargin);
    for (auto k : {ConnectionKind::berwald, ConnectionKind::canonical, ConnectionKind::christoffel}) {
      const double r = max_over(points, o.jobs, [&](const PointU& u, int) { return flat_zero_residual(space, k, u); });
      rec.max("n=" + std::to_string(n) + " " + to_string(k), r, 1e-9);
    }
  }
}

void riemann_reduction_criterion(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace space(field(kSphere, tm));
  auto base = fields(tm, {"1", "0", "0", "sin(x1)^2"}, 2, 2);
  auto points = sample(space, mix(o.seed, 2), 10, sphere_box(), kDefaultNullMargin);
  std::vector<RiemannReduction> r(points.size());
  parallel_for(static_cast<int>(points.size()), o.jobs,
               [&](int i) { r[static_cast<std::size_t>(i)] = riemann_reduction(space, base, points[static_cast<std::size_t>(i)]); });
  double nc = 0, ch = 0, rh = 0, sc = 0;
  for (const auto& x : r) {
    nc = std::max(nc, x.n_connection);
    ch = std::max(ch, x.christoffel);
    rh = std::max(rh, x.riemann);
    sc = std::max(sc, std::abs(x.scalar - 2.0));
  }
  rec.max("N = gamma y", nc, 1e-8);
  rec.max("L = Christoffel", ch, 1e-8);
  rec.max("R_h = Riemann", rh, 1e-8);
  rec.max("|scalar - 2|", sc, 1e-6);
}

void homogeneity(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace space(field(kRanders, tm));
  auto points = sample(space, mix(o.seed, 3), 50, unit_box(4), kDefaultNullMargin);
  auto r = homogeneity_report(space, points);
  rec.max("F 1-homogeneous", r.f_homogeneity, 1e-9);
  rec.max("g 0-homogeneous", r.g_homogeneity, 1e-9);
  rec.max("Euler y g y = F^2", r.euler, 1e-9);
  rec.max("Cartan tensor . y", r.cartan_contraction, 1e-9);
}

void ad_fd(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  std::mt19937_64 rng(mix(o.seed, 4));
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<ScalarField> asts;
  std::vector<std::vector<double>> at;
  for (int i = 0; i < 20; ++i) {
    asts.push_back(random_ast(tm.context, rng, RandomAstSpec{3, false}));
    at.push_back({coord(rng), coord(rng), coord(rng), coord(rng)});
  }
  std::vector<double> r(asts.size());
  parallel_for(20, o.jobs, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    r[k] = ad_fd_residual(asts[k], at[k], 3);
  });
  rec.max("20 random expressions", *std::max_element(r.begin(), r.end()), 1e-5);

  FinslerSpace randers(field(kRanders, tm));
  auto points = sample(randers, mix(o.seed, 41), 5, unit_box(4), kDefaultNullMargin);
  MetricOracle oracle = [](std::span<const double> u) {
    Matrix a({2, 2}, 0.0);
    a(0, 0) = 1.0 + 0.25 * u[0] * u[0];
    a(1, 1) = 1.0;
    const std::vector<double> b{0.3, 0.0};
    return randers_metric(a, b, u.subspan(2, 2));
  };
  const double rr =
      max_over(points, o.jobs, [&](const PointU& u, int) { return metric_ad_fd_residual(randers, u, oracle, 3); });
  rec.max("Randers g vs closed form", rr, 1e-5);
}

void metricity(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace sphere(field(kSphere, tm)), randers(field(kRanders, tm));
  const std::vector<std::pair<const char*, const FinslerSpace*>> spaces{{"S2", &sphere}, {"Randers", &randers}};
  int salt = 50;
  for (const auto& [label, space] : spaces) {
    auto box = space == &sphere ? sphere_box() : unit_box(4);
    auto points = sample(*space, mix(o.seed, salt++), 5, box, kDefaultNullMargin);
    std::vector<MetricityReport> canon(points.size()), berw(points.size());
    parallel_for(static_cast<int>(points.size()), o.jobs, [&](int i) {
      const auto k = static_cast<std::size_t>(i);
      auto f = space->evaluate(points[k], required_order(*space, Stage::connection));
      canon[k] = metricity_residual(canonical_connection(f), f);
      berw[k] = metricity_residual(berwald_connection(f), f);
    });
    MetricityReport c, b;
    for (std::size_t k = 0; k < points.size(); ++k) {
      c.hh = std::max(c.hh, canon[k].hh);
      c.hv = std::max(c.hv, canon[k].hv);
      c.vh = std::max(c.vh, canon[k].vh);
      c.vv = std::max(c.vv, canon[k].vv);
      b.hh = std::max(b.hh, berw[k].hh);
      b.vv = std::max(b.vv, berw[k].vv);
    }
    const std::string p = std::string(label) + " ";
    rec.max(p + "canonical D_h g", c.hh, 1e-8);
    rec.max(p + "canonical D_h h", c.hv, 1e-8);
    rec.max(p + "canonical D_v g", c.vh, 1e-8);
    rec.max(p + "canonical D_v h", c.vv, 1e-8);
    rec.max(p + "Berwald D_h g", b.hh, 1e-8);
    rec.max(p + "Berwald D_v h", b.vv, 1e-8);
  }
}

std::unique_ptr<RawBundle> gl_test_space(const BundleChart& tm) {
  return generalized_lagrange(
      tm,
      fields(tm, {"1 + 0.1*x1^2 + 0.2*y1^2", "0.1*x2*y2", "0.1*x2*y2", "2 + 0.3*sin(x1) + 0.1*y2^2"}, 2, 2),
      fields(tm, {"0.1*x2*y1", "0.2*y2*x1", "0.05*y1*y2", "0.1*x1"}, 2, 2));
}

void anholonomy(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  FinslerSpace sphere(field(kSphere, tm));
  auto gl = gl_test_space(tm);
  auto ps = sample(sphere, mix(o.seed, 6), 5, sphere_box(), kDefaultNullMargin);
  auto pg = sample(*gl, mix(o.seed, 61), 5, unit_box(4), 0.0);
  rec.max("S2 Finsler", max_over(ps, o.jobs, [&](const PointU& u, int i) {
            return anholonomy_residual(sphere, u, mix(o.seed, 600 + i), 10);
          }), 1e-10);
  rec.max("generalized Lagrange", max_over(pg, o.jobs, [&](const PointU& u, int i) {
            return anholonomy_residual(*gl, u, mix(o.seed, 700 + i), 10);
          }), 1e-10);
}

void duality(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart ct(2, 2, Variance::covector);
  CartanSpace cartan(field("sqrt(p1^2 + p2^2)", ct));
  HamiltonSpace hamilton(field("p1^2 + p2^2", ct));
  auto pc = sample(cartan, mix(o.seed, 7), 5, unit_box(4), kDefaultNullMargin);
  auto ph = sample(hamilton, mix(o.seed, 71), 5, unit_box(4), 0.0);
  auto n_max = [](const GeometrySource& s, const PointU& u) {
    auto f = s.evaluate(u, required_order(s, Stage::fields));
    double r = 0.0;
    for (int a = 0; a < f.nconn.m(); ++a)
      for (int i = 0; i < f.nconn.n(); ++i) r = std::max(r, std::abs(f.nconn.value(a, i)));
    return r;
  };
  rec.max("Cartan N", max_over(pc, o.jobs, [&](const PointU& u, int) { return n_max(cartan, u); }), 1e-9);
  rec.max("Hamilton N", max_over(ph, o.jobs, [&](const PointU& u, int) { return n_max(hamilton, u); }), 1e-9);
  for (auto k : {ConnectionKind::canonical, ConnectionKind::hamilton_canonical}) {
    rec.max(std::string("Cartan ") + to_string(k) + " torsion/curvature",
            max_over(pc, o.jobs, [&](const PointU& u, int) { return flat_zero_residual(cartan, k, u); }), 1e-9);
    rec.max(std::string("Hamilton ") + to_string(k) + " torsion/curvature",
            max_over(ph, o.jobs, [&](const PointU& u, int) { return flat_zero_residual(hamilton, k, u); }), 1e-9);
  }
  CartanSpace curved(field("sqrt(p1^2 + p2^2/sin(x1)^2)", ct));
  auto pk = sample(curved, mix(o.seed, 72), 5, sphere_box(), kDefaultNullMargin);
  rec.max("curved Cartan canonical metricity", max_over(pk, o.jobs, [&](const PointU& u, int) {
            auto f = curved.evaluate(u, required_order(curved, Stage::connection));
            return metricity_residual(canonical_connection(f), f).max();
          }), 1e-8);
}

// ---------------------------------------------------------------------------

void clifford_algebra(Recorder& rec, const AcceptanceOptions& o) {
  std::mt19937_64 rng(mix(o.seed, 8));
  // Irreducible dimensions for n = 1..8.
  const int table[8] = {1, 2, 2, 4, 4, 8, 8, 16};
  CliffordSuite worst;
  bool dims = true;
  int signatures = 0;
  for (int n = 1; n <= 8; ++n)
    for (int p = 0; p <= n; ++p) {
      // Three samples per signature: 132 group elements over the 44 signatures.
      const CliffordSuite s = clifford_suite(Signature{p, n - p}, rng, 3);
      dims = dims && s.spinor_dim == table[n - 1] && spinor_dimension(n) == table[n - 1];
      worst.anticommutation = std::max(worst.anticommutation, s.anticommutation);
      worst.homomorphism = std::max(worst.homomorphism, s.homomorphism);
      worst.blade_orthonormality = std::max(worst.blade_orthonormality, s.blade_orthonormality);
      worst.spinor_norm = std::max(worst.spinor_norm, s.spinor_norm);
      worst.orthogonality = std::max(worst.orthogonality, s.orthogonality);
      worst.determinant = std::max(worst.determinant, s.determinant);
      worst.double_cover = std::max(worst.double_cover, s.double_cover);
      ++signatures;
    }
  rec.max("anticommutation, " + std::to_string(signatures) + " signatures", worst.anticommutation, 1e-12);
  rec.flag("irrep dimensions n = 1..8", dims);
  rec.max("S(uu') = S(u)S(u')", worst.spinor_norm, 1e-9);
  rec.max("rho(Spin) orthogonal", worst.orthogonality, 1e-9);
  rec.max("rho(Spin) det - 1", worst.determinant, 1e-9);
  rec.max("rho(u) - rho(-u)", worst.double_cover, 1e-9);
  rec.max("faithfulness: homomorphism", worst.homomorphism, 1e-10);
  rec.max("faithfulness: blade images orthonormal", worst.blade_orthonormality, 1e-10);
}

void epsilon(Recorder& rec, const AcceptanceOptions&) {
  for (int n : {2, 4, 6}) {
    auto e = default_epsilon(matrix_rep(Signature{n, 0}));
    rec.max("factorization n=" + std::to_string(n), e.residual, 1e-9);
  }
  bool classes = true;
  int count = 0;
  for (int n = 1; n <= 6; ++n) {
    auto rep = matrix_rep(Signature{n, 0});
    auto e = default_epsilon(rep);
    for (int q = 0; q <= std::min(n, 3); ++q) {
      classes = classes && sigma_symmetry_check(rep, e, q).pass;
      ++count;
    }
  }
  rec.flag("symmetry classes (" + std::to_string(count) + " cases)", classes);
}

void metric_reconstruction_criterion(Recorder& rec, const AcceptanceOptions& o) {
  auto rep = euclidean_d_sigma(2, 2);
  auto eh = default_epsilon(rep.h), ev = default_epsilon(rep.v);
  std::mt19937_64 rng(mix(o.seed, 10));
  std::uniform_real_distribution<double> d(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi);
  auto run = [&](const Matrix& l) {
    std::vector<CMatrix> sigma_u(4);
    for (int al = 0; al < 4; ++al) {
      CMatrix s = CMatrix::Zero(rep.spinor_dim(), rep.spinor_dim());
      for (int a = 0; a < 4; ++a) s += l(a, al) * rep.sigma(a);
      sigma_u[static_cast<std::size_t>(al)] = s;
    }
    Matrix g = metric_reconstruction(sigma_u, rep, eh, ev);
    double r = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double expect = 0.0;
        for (int c = 0; c < 4; ++c) expect += l(c, a) * l(c, b);
        r = std::max(r, std::abs(g(a, b) - expect));
      }
    return r;
  };
  Matrix id({4, 4}, 0.0);
  for (int a = 0; a < 4; ++a) id(a, a) = 1.0;
  double rot = 0.0, general = 0.0;
  for (int t = 0; t < 5; ++t) {
    Matrix l({4, 4}, 0.0), m({4, 4}, 0.0);
    for (int blk : {0, 2}) {
      const double th = angle(rng);
      l(blk, blk) = std::cos(th);
      l(blk, blk + 1) = -std::sin(th);
      l(blk + 1, blk) = std::sin(th);
      l(blk + 1, blk + 1) = std::cos(th);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(blk + i, blk + j) = (i == j ? 1.5 : 0.0) + 0.5 * d(rng);
    }
    rot = std::max(rot, run(l));
    general = std::max(general, run(m));
  }
  rec.max("orthonormal frame", run(id), 1e-9);
  rec.max("rotated orthonormal frames", rot, 1e-9);
  rec.max("general block frames", general, 1e-9);
}

void spinor_tensor(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  auto gl = gl_test_space(tm);
  auto points = sample(*gl, mix(o.seed, 11), 5, unit_box(4), 0.0);
  std::vector<SpinorCrossCheck> r(points.size());
  parallel_for(static_cast<int>(points.size()), o.jobs, [&](int i) {
    r[static_cast<std::size_t>(i)] = spinor_tensor_cross_check(*gl, ConnectionKind::canonical, points[static_cast<std::size_t>(i)]);
  });
  double sd = 0.0, cd_ = 0.0;
  for (const auto& x : r) {
    sd = std::max(sd, x.scalar_diff);
    cd_ = std::max(cd_, x.curvature_diff);
  }
  rec.max("scalar curvature", sd, 1e-6);
  rec.max("frame curvature", cd_, 1e-6);
}

void twistor(Recorder& rec, const AcceptanceOptions& o) {
  auto rep = euclidean_d_sigma(2, 2);
  std::mt19937_64 rng(mix(o.seed, 12));
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  auto spinor = [&]() {
    CVector v(rep.spinor_dim());
    for (int i = 0; i < v.size(); ++i) v(i) = cd(d(rng), d(rng));
    return v;
  };
  double worst = 0.0, control = 1e300;
  for (int t = 0; t < 20; ++t) {
    CVector Om = spinor(), Pi = spinor();
    std::vector<double> u{d(rng), d(rng), d(rng), d(rng)};
    worst = std::max(worst, twistor_residual(twistor_solution(rep, Om, Pi), rep, u));
    SpinorField bad = [Om](const std::vector<double>& x) { return CVector(x[0] * x[0] * Om); };
    u[0] = 0.5 + 0.5 * std::abs(u[0]);
    control = std::min(control, twistor_residual(bad, rep, u));
  }
  rec.max("20 solutions", worst, 1e-10);
  rec.above("non-solution control", control, 1e-3);
}

// ---------------------------------------------------------------------------

const char* kPassScenario = R"json({
  "name": "sphere",
  "space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + sin(x1)^2*y2^2)",
            "base_metric": [["1", "0"], ["0", "sin(x1)^2"]]},
  "connection": "canonical",
  "sampler": {"seed": 5, "count": 6, "box": [[0.4, 2.7], [-1, 1], [-1, 1], [-1, 1]]},
  "checks": ["riemann_reduction", "scalar_curvature=2@1e-6", "metricity"]
})json";

const char* kFailScenario = R"json({
  "name": "flat claims curvature",
  "space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + y2^2)"},
  "points": [[0.1, 0.2, 0.5, 0.5]],
  "checks": ["flat_zero", "scalar_curvature=1"]
})json";

const char* kMalformedScenario = R"json({
  "space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 +* y2^2)"},
  "points": [[0.1, 0.2, 0.5, 0.5]],
  "checks": ["flat_zero"]
})json";

const char* kUnknownCheckScenario = R"json({
  "space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + y2^2)"},
  "points": [[0.1, 0.2, 0.5, 0.5]],
  "checks": ["no_such_check"]
})json";

void tooling(Recorder& rec, const AcceptanceOptions& o) {
  BundleChart tm(2, 2, Variance::vector);
  std::mt19937_64 rng(mix(o.seed, 13));
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    ScalarField f = random_ast(tm.context, rng, RandomAstSpec{4, true});
    const std::string s1 = format(f);
    try {
      ScalarField f2 = parse(s1, tm.context);
      const std::string s2 = format(f2);
      if (s1 != s2 || !structurally_equal(f2.root(), parse(s2, tm.context).root())) ++mismatches;
      const std::vector<double> at{0.3, -0.4, 0.7, 0.2};
      const double a = evaluate(f, std::span<const double>(at)), b = evaluate(f2, std::span<const double>(at));
      if (a != b && std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) ++mismatches;
    } catch (const Error&) {
      ++mismatches;
    }
  }
  rec.max("round trip mismatches (200 expressions)", mismatches, 0.0);

  report::CommandOptions co;
  co.timing = false;
  co.jobs = 1;
  auto one = report::analyze_command(kPassScenario, co);
  bool same = true;
  for (int jobs : {2, 4}) {
    co.jobs = jobs;
    same = same && report::analyze_command(kPassScenario, co).body == one.body;
  }
  rec.flag("byte-identical reports for 1, 2 and 4 workers", same);

  co.jobs = o.jobs;
  rec.flag("passing scenario exits 0", one.code == 0);
  auto fail = report::analyze_command(kFailScenario, co);
  rec.flag("failing check exits 1 with a report", fail.code == 1 && fail.body.find("\"checks\"") != std::string::npos);
  auto bad = report::analyze_command(kMalformedScenario, co);
  rec.flag("malformed expression exits 2 with an offset",
           bad.code == 2 && bad.body.find("\"offset\"") != std::string::npos);
  auto unknown = report::analyze_command(kUnknownCheckScenario, co);
  rec.flag("unknown check exits 2", unknown.code == 2 && unknown.body.find("\"error\"") != std::string::npos);
}

using CriterionFn = void (*)(Recorder&, const AcceptanceOptions&);

CriterionFn criterion_fn(int id) {
  switch (id) {
    case 1: return flat_vanishing;
    case 2: return riemann_reduction_criterion;
    case 3: return homogeneity;
    case 4: return ad_fd;
    case 5: return metricity;
    case 6: return anholonomy;
    case 7: return duality;
    case 8: return clifford_algebra;
    case 9: return epsilon;
    case 10: return metric_reconstruction_criterion;
    case 11: return spinor_tensor;
    case 12: return twistor;
    case 13: return tooling;
  }
  fail(ErrorKind::invalid_argument, "no criterion " + std::to_string(id));
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out{"all", "geometry", "clifford", "spinor", "tooling"};
  for (const auto& c : criteria()) {
    if (std::find(out.begin(), out.end(), c.name) == out.end()) out.emplace_back(c.name);
  }
  return out;
}

std::vector<int> suite_members(const std::string& suite) {
  std::vector<int> ids;
  for (const auto& c : criteria()) {
    if (suite == "all" || suite == c.suite || suite == c.name || suite == std::to_string(c.id)) ids.push_back(c.id);
  }
  if (ids.empty()) fail(ErrorKind::invalid_argument, "unknown suite '" + suite + "'");
  return ids;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  const auto& list = criteria();
  auto it = std::find_if(list.begin(), list.end(), [&](const Criterion& c) { return c.id == id; });
  if (it == list.end()) fail(ErrorKind::invalid_argument, "no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = it->name;
  r.title = it->title;
  Recorder rec(opts.tolerance_scale);
  const auto start = std::chrono::steady_clock::now();
  try {
    criterion_fn(id)(rec, opts);
  } catch (const std::exception& e) {
    r.note = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.checks = rec.take();
  r.pass = r.note.empty() && !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const SubCheck& c) { return c.pass; });
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const std::string& suite) {
  std::vector<CriterionResult> out;
  for (int id : suite_members(suite)) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_line(const CriterionResult& r) {
  // Worst sub-check by measured / tolerance; failing ones first.
  const SubCheck* worst = nullptr;
  double worst_ratio = -1.0;
  for (const auto& c : r.checks) {
    double ratio = c.control ? (c.measured > 0 ? c.tolerance / c.measured : 1e300)
                             : (c.tolerance > 0 ? c.measured / c.tolerance : c.measured);
    if (!c.pass) ratio = 1e300;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = &c;
    }
  }
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-22s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  std::string line = head;
  if (!r.note.empty()) {
    line += " error: " + r.note;
  } else if (worst) {
    line += " worst [" + worst->name + "] " + short_number(worst->measured) + (worst->control ? " > " : " <= ") +
            short_number(worst->tolerance);
  }
  char tail[64];
  std::snprintf(tail, sizeof tail, "  (%zu checks, %.2f s)", r.checks.size(), r.elapsed_ms / 1000.0);
  return line + tail;
}

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results, bool timing) {
  nlohmann::json out = nlohmann::json::object();
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name},
                        {"measured", c.measured},
                        {c.control ? "must_exceed" : "tolerance", c.tolerance},
                        {"pass", c.pass}});
    nlohmann::json item = {{"id", r.id}, {"name", r.name}, {"title", r.title}, {"pass", r.pass}, {"checks", checks}};
    if (!r.note.empty()) item["error"] = r.note;
    if (timing) item["elapsed_ms"] = r.elapsed_ms;
    list.push_back(item);
    all = all && r.pass;
  }
  out["criteria"] = list;
  out["pass"] = all;
  return out;
}

}  // namespace anholkit::verify
