#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "anholkit/fd_oracle.hpp"
#include "oracles.hpp"

namespace anholkit::verify {
namespace {

double jet_max(const NdArray<Jet>& a) {
  double r = 0.0;
  for (const auto& j : a.data()) r = std::max(r, std::fabs(j.value()));
  return r;
}

void enumerate(int nvars, int remaining, std::vector<int>& cur, std::size_t var, std::vector<std::vector<int>>& out) {
  if (var == static_cast<std::size_t>(nvars)) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[var] = k;
    enumerate(nvars, remaining - k, cur, var + 1, out);
  }
  cur[var] = 0;
}

double scaled_error(double jet, double fd) { return std::fabs(jet - fd) / (1.0 + std::fabs(fd)); }

}  // namespace

std::vector<std::vector<int>> multi_indices(int nvars, int max_order) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  enumerate(nvars, max_order, cur, 0, all);
  std::vector<std::vector<int>> out;
  for (auto& a : all) {
    int k = 0;
    for (int v : a) k += v;
    if (k >= 1) out.push_back(std::move(a));
  }
  return out;
}

double flat_zero_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                          const RicciConvention& conv) {
  auto f = space.evaluate(u, required_order(space, Stage::curvature));
  auto conn = build_connection(kind, f);
  auto T = d_torsions(conn, f.nconn);
  auto R = d_curvatures(conn, f.nconn);
  auto ric = ricci(R, f.metric, conv);
  auto G = einstein(ric, f.metric);
  return std::max({T.max_abs(), R.max_abs(), jet_max(n_curvature(f.nconn)), ric.max_abs(), std::fabs(ric.scalar),
                   G.max_abs()});
}

double RiemannReduction::max() const { return std::max({n_connection, christoffel, riemann}); }

RiemannReduction riemann_reduction(const GeometrySource& space, const NdArray<ScalarField>& base_metric,
                                   const PointU& u) {
  const auto& chart = space.chart();
  if (chart.variance != Variance::vector || chart.n != chart.m)
    fail(ErrorKind::validation, "Riemannian reduction needs a tangent bundle");
  const int n = chart.n;
  auto f = space.evaluate(u, required_order(space, Stage::curvature));
  auto conn = build_connection(ConnectionKind::canonical, f);
  auto R = d_curvatures(conn, f.nconn);
  auto coords = u.coords();
  auto cg = classical_geometry(base_metric, coords, n);

  RiemannReduction r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gy = 0.0;
      for (int k = 0; k < n; ++k) gy += cg.christoffel(i, j, k) * u.fiber[static_cast<std::size_t>(k)];
      r.n_connection = std::max(r.n_connection, std::fabs(f.nconn.value(i, j) - gy));
      for (int k = 0; k < n; ++k) {
        r.christoffel = std::max(r.christoffel, std::fabs(conn.L_h(i, j, k).value() - cg.christoffel(i, j, k)));
        for (int h = 0; h < n; ++h)
          r.riemann = std::max(r.riemann, std::fabs(R.R_h(i, h, j, k) - cg.riemann(i, h, j, k)));
      }
    }
  r.scalar = ricci(R, f.metric).scalar;
  return r;
}

double anholonomy_residual(const GeometrySource& space, const PointU& u, std::uint64_t seed_value, int functions) {
  const int n = space.chart().n, m = space.chart().m, D = n + m;
  auto f = space.evaluate(u, space.depth() + 2);
  const auto& nc = f.nconn;
  auto omega = n_curvature(nc);
  auto coords = u.coords();
  auto vars = seed(coords, 3);
  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double res = 0.0;
  for (int t = 0; t < functions; ++t) {
    std::vector<Jet> du;
    for (const auto& v : vars) du.push_back(v - v.value());
    Jet p = Jet(vars[0].layout(), 3, dist(rng));
    for (int a = 0; a < D; ++a) {
      p += dist(rng) * du[static_cast<std::size_t>(a)];
      for (int b = a; b < D; ++b) {
        p += dist(rng) * (du[static_cast<std::size_t>(a)] * du[static_cast<std::size_t>(b)]);
        for (int c = b; c < D; ++c)
          p += dist(rng) * (du[static_cast<std::size_t>(a)] * du[static_cast<std::size_t>(b)] * du[static_cast<std::size_t>(c)]);
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double lhs = nc.delta(nc.delta(p, j), i).value() - nc.delta(nc.delta(p, i), j).value();
        double rhs = 0.0;
        for (int a = 0; a < m; ++a) rhs += omega(a, i, j).value() * p.derivative(n + a).value();
        res = std::max(res, std::fabs(lhs - rhs));
      }
  }
  return res;
}

double ad_fd_residual(const ScalarField& f, std::span<const double> point, int max_order) {
  const int nv = static_cast<int>(point.size());
  auto vars = seed(point, max_order);
  Jet j = evaluate<Jet>(f, std::span<const Jet>(vars));
  double worst = scaled_error(j.value(), evaluate<double>(f, point));
  for (const auto& alpha : multi_indices(nv, max_order))
    worst = std::max(worst, scaled_error(extract_partial(j, alpha), fd_oracle(f, point, alpha)));
  return worst;
}

double metric_ad_fd_residual(const FinslerSpace& space, const PointU& u, const MetricOracle& oracle, int max_order) {
  const int n = space.chart().n;
  auto coords = u.coords();
  auto vars = seed(coords, max_order + 2);
  auto g = space.metric_jets(vars);
  double worst = 0.0;
  Matrix g0 = oracle(coords);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) worst = std::max(worst, scaled_error(g(i, j).value(), g0(i, j)));
  for (const auto& alpha : multi_indices(static_cast<int>(coords.size()), max_order))
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        PlainFunction entry = [&](std::span<const double> x) { return oracle(x)(i, j); };
        worst = std::max(worst, scaled_error(extract_partial(g(i, j), alpha), fd_oracle(entry, coords, alpha)));
      }
  return worst;
}

}  // namespace anholkit::verify
