#include "oracles.hpp"

#include <cmath>

namespace anholkit::verify {

SecondOrder hyper_dual_partials(const ScalarField& f, std::span<const double> point, int i, int j) {
  std::vector<HyperDual> vars;
  vars.reserve(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    HyperDual v{point[k], 0.0, 0.0, 0.0};
    if (static_cast<int>(k) == i) v.b = 1.0;
    if (static_cast<int>(k) == j) v.c = 1.0;
    vars.push_back(v);
  }
  HyperDual r = evaluate<HyperDual>(f, std::span<const HyperDual>(vars));
  return {r.a, r.b, r.c, r.d};
}

ClassicalGeometry classical_geometry(const NdArray<ScalarField>& gf, std::span<const double> point, int n) {
  ClassicalGeometry cg;
  cg.g = Matrix({n, n});
  NdArray<double> dg({n, n, n});      // dg(i, j, k) = d_k g_ij
  NdArray<double> ddg({n, n, n, n});  // ddg(i, j, k, l) = d_k d_l g_ij
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          auto p = hyper_dual_partials(gf(i, j), point, k, l);
          cg.g(i, j) = p.value;
          dg(i, j, k) = p.di;
          dg(i, j, l) = p.dj;
          ddg(i, j, k, l) = ddg(i, j, l, k) = p.dij;
        }
  cg.g_inv = inverse(cg.g);
  const auto& gi = cg.g_inv;

  // first-kind symbols and their derivatives
  NdArray<double> G1({n, n, n});      // G1(l, j, k) = 1/2 (d_j g_lk + d_k g_lj - d_l g_jk)
  NdArray<double> dG1({n, n, n, n});  // dG1(l, j, k, m) = d_m G1(l, j, k)
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        G1(l, j, k) = 0.5 * (dg(l, k, j) + dg(l, j, k) - dg(j, k, l));
        for (int m = 0; m < n; ++m) dG1(l, j, k, m) = 0.5 * (ddg(l, k, j, m) + ddg(l, j, k, m) - ddg(j, k, l, m));
      }
  NdArray<double> dgi({n, n, n});  // d_m g^il = -g^ip d_m g_pq g^ql
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) s -= gi(i, p) * dg(p, q, m) * gi(q, l);
        dgi(i, l, m) = s;
      }
  cg.christoffel = NdArray<double>({n, n, n});
  NdArray<double> dG({n, n, n, n});  // d_m gamma^i_jk
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += gi(i, l) * G1(l, j, k);
        cg.christoffel(i, j, k) = s;
        for (int m = 0; m < n; ++m) {
          double d = 0.0;
          for (int l = 0; l < n; ++l) d += dgi(i, l, m) * G1(l, j, k) + gi(i, l) * dG1(l, j, k, m);
          dG(i, j, k, m) = d;
        }
      }
  const auto& C = cg.christoffel;
  cg.riemann = NdArray<double>({n, n, n, n});
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = dG(i, h, j, k) - dG(i, h, k, j);
          for (int m = 0; m < n; ++m) s += C(i, m, k) * C(m, h, j) - C(i, m, j) * C(m, h, k);
          cg.riemann(i, h, j, k) = s;
        }
  cg.ricci = Matrix({n, n});
  cg.scalar = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += cg.riemann(k, i, j, k);
      cg.ricci(i, j) = s;
      cg.scalar += gi(i, j) * s;
    }
  return cg;
}

Matrix randers_metric(const Matrix& a, std::span<const double> b, std::span<const double> y) {
  const int n = a.extent(0);
  std::vector<double> ay(static_cast<std::size_t>(n), 0.0);
  double alpha2 = 0.0, beta = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ay[static_cast<std::size_t>(i)] += a(i, j) * y[static_cast<std::size_t>(j)];
    alpha2 += ay[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    beta += b[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  }
  const double alpha = std::sqrt(alpha2);
  const double F = alpha + beta;
  Matrix g({n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double li = ay[static_cast<std::size_t>(i)] / alpha;
      const double lj = ay[static_cast<std::size_t>(j)] / alpha;
      g(i, j) = F / alpha * (a(i, j) - li * lj) + (li + b[static_cast<std::size_t>(i)]) * (lj + b[static_cast<std::size_t>(j)]);
    }
  return g;
}

}  // namespace anholkit::verify
