#include "anholkit/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace anholkit {

double TorsionComponents::max_abs() const {
  return std::max({anholkit::max_abs(T_h), anholkit::max_abs(T_hv), anholkit::max_abs(T_v), anholkit::max_abs(P),
                   anholkit::max_abs(S)});
}

double CurvatureComponents::max_abs() const {
  return std::max({anholkit::max_abs(R_h), anholkit::max_abs(R_v), anholkit::max_abs(P_h), anholkit::max_abs(P_v),
                   anholkit::max_abs(S_h), anholkit::max_abs(S_v)});
}

double RicciComponents::max_abs() const {
  return std::max({anholkit::max_abs(R_hh), anholkit::max_abs(R_hv), anholkit::max_abs(R_vh),
                   anholkit::max_abs(R_vv), std::fabs(scalar)});
}

double EinsteinComponents::max_abs() const {
  return std::max({anholkit::max_abs(G_hh), anholkit::max_abs(G_hv), anholkit::max_abs(G_vh),
                   anholkit::max_abs(G_vv)});
}

TorsionComponents d_torsions(const DConnectionCoeffs& c, const NConnectionEval& nc) {
  const int n = c.n, m = c.m;
  TorsionComponents t;
  t.T_h = NdArray<double>({n, n, n});
  t.T_hv = NdArray<double>({n, n, m});
  t.T_v = NdArray<double>({m, n, n});
  t.P = NdArray<double>({m, m, n});
  t.S = NdArray<double>({m, m, m});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.T_h(i, j, k) = c.L_h(i, j, k).value() - c.L_h(i, k, j).value();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a) t.T_hv(i, j, a) = c.C_h(i, j, a).value();
  auto omega = n_curvature(nc);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.T_v(a, i, j) = omega(a, i, j).value();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i) t.P(a, b, i) = nc.dfib(nc.nv(a, i), b).value() - c.L_v(a, b, i).value();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc) t.S(a, b, cc) = c.C_v(a, b, cc).value() - c.C_v(a, cc, b).value();
  return t;
}

CurvatureComponents d_curvatures(const DConnectionCoeffs& c, const NConnectionEval& nc) {
  const int n = c.n, m = c.m;
  if (c.order() < 1) fail(ErrorKind::order_exceeded, "curvature needs first derivatives of the connection");
  auto val = [](const Jet& j) { return j.value(); };
  auto omega = n_curvature(nc);
  // P^a_bk = d_b Nv^a_k - L^a_bk
  NdArray<double> P({m, m, n});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < n; ++k) P(a, b, k) = nc.dfib(nc.nv(a, k), b).value() - val(c.L_v(a, b, k));

  CurvatureComponents R;
  R.R_h = NdArray<double>({n, n, n, n});
  R.R_v = NdArray<double>({m, m, n, n});
  R.P_h = NdArray<double>({n, n, n, m});
  R.P_v = NdArray<double>({m, m, n, m});
  R.S_h = NdArray<double>({n, n, m, m});
  R.S_v = NdArray<double>({m, m, m, m});

  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double s = nc.delta(c.L_h(i, h, j), k).value() - nc.delta(c.L_h(i, h, k), j).value();
          for (int l = 0; l < n; ++l)
            s += val(c.L_h(l, h, j)) * val(c.L_h(i, l, k)) - val(c.L_h(l, h, k)) * val(c.L_h(i, l, j));
          for (int a = 0; a < m; ++a) s += val(c.C_h(i, h, a)) * val(omega(a, j, k));
          R.R_h(i, h, j, k) = s;
          R.R_h(i, h, k, j) = -s;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          double s = nc.delta(c.L_v(a, b, j), k).value() - nc.delta(c.L_v(a, b, k), j).value();
          for (int cc = 0; cc < m; ++cc)
            s += val(c.L_v(cc, b, j)) * val(c.L_v(a, cc, k)) - val(c.L_v(cc, b, k)) * val(c.L_v(a, cc, j));
          for (int cc = 0; cc < m; ++cc) s += val(c.C_v(a, b, cc)) * val(omega(cc, j, k));
          R.R_v(a, b, j, k) = s;
          R.R_v(a, b, k, j) = -s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < m; ++a) {
          double s = nc.dfib(c.L_h(i, j, k), a).value();
          double t = nc.delta(c.C_h(i, j, a), k).value();
          for (int l = 0; l < n; ++l)
            t += val(c.L_h(i, l, k)) * val(c.C_h(l, j, a)) - val(c.L_h(l, j, k)) * val(c.C_h(i, l, a));
          for (int cc = 0; cc < m; ++cc) t -= val(c.L_v(cc, a, k)) * val(c.C_h(i, j, cc));
          s -= t;
          for (int b = 0; b < m; ++b) s += val(c.C_h(i, j, b)) * P(b, a, k);
          R.P_h(i, j, k, a) = s;
        }
  for (int cc = 0; cc < m; ++cc)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < m; ++a) {
          double s = nc.dfib(c.L_v(cc, b, k), a).value();
          double t = nc.delta(c.C_v(cc, b, a), k).value();
          for (int d = 0; d < m; ++d)
            t += val(c.L_v(cc, d, k)) * val(c.C_v(d, b, a)) - val(c.L_v(d, b, k)) * val(c.C_v(cc, d, a)) -
                 val(c.L_v(d, a, k)) * val(c.C_v(cc, b, d));
          s -= t;
          for (int d = 0; d < m; ++d) s += val(c.C_v(cc, b, d)) * P(d, a, k);
          R.P_v(cc, b, k, a) = s;
        }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < m; ++b)
        for (int cc = b + 1; cc < m; ++cc) {
          double s = nc.dfib(c.C_h(i, j, b), cc).value() - nc.dfib(c.C_h(i, j, cc), b).value();
          for (int h = 0; h < n; ++h)
            s += val(c.C_h(h, j, b)) * val(c.C_h(i, h, cc)) - val(c.C_h(h, j, cc)) * val(c.C_h(i, h, b));
          R.S_h(i, j, b, cc) = s;
          R.S_h(i, j, cc, b) = -s;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc)
        for (int d = cc + 1; d < m; ++d) {
          double s = nc.dfib(c.C_v(a, b, cc), d).value() - nc.dfib(c.C_v(a, b, d), cc).value();
          for (int e = 0; e < m; ++e)
            s += val(c.C_v(e, b, cc)) * val(c.C_v(a, e, d)) - val(c.C_v(e, b, d)) * val(c.C_v(a, e, cc));
          R.S_v(a, b, cc, d) = s;
          R.S_v(a, b, d, cc) = -s;
        }
  return R;
}

RicciComponents ricci(const CurvatureComponents& R, const DMetricEval& metric, const RicciConvention& conv) {
  const int n = R.R_h.extent(0), m = R.S_v.extent(0);
  RicciComponents r;
  r.R_hh = NdArray<double>({n, n});
  r.R_hv = NdArray<double>({n, m});
  r.R_vh = NdArray<double>({m, n});
  r.R_vv = NdArray<double>({m, m});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += R.R_h(k, i, j, k);
      r.R_hh(i, j) = s;
    }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += R.P_h(k, i, k, a);
      r.R_hv(i, a) = conv.mixed_hv * s;
    }
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int b = 0; b < m; ++b) s += R.P_v(b, a, i, b);
      r.R_vh(a, i) = conv.mixed_vh * s;
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s += R.S_v(c, a, b, c);
      r.R_vv(a, b) = s;
    }
  const auto& gi = metric.g_inv();
  const auto& hi = metric.h_inv();
  double sc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sc += gi(i, j).value() * r.R_hh(i, j);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) sc += hi(a, b).value() * r.R_vv(a, b);
  r.scalar = sc;
  return r;
}

EinsteinComponents einstein(const RicciComponents& ric, const DMetricEval& metric) {
  EinsteinComponents e{ric.R_hh, ric.R_hv, ric.R_vh, ric.R_vv};
  const auto& g = metric.g();
  const auto& h = metric.h();
  for (int i = 0; i < e.G_hh.extent(0); ++i)
    for (int j = 0; j < e.G_hh.extent(1); ++j) e.G_hh(i, j) -= 0.5 * g(i, j).value() * ric.scalar;
  for (int a = 0; a < e.G_vv.extent(0); ++a)
    for (int b = 0; b < e.G_vv.extent(1); ++b) e.G_vv(a, b) -= 0.5 * h(a, b).value() * ric.scalar;
  return e;
}

NdArray<double> frame_curvature(const DConnectionCoeffs& conn, const NConnectionEval& nc) {
  const int D = conn.n + conn.m;
  auto G = conn.assemble();
  auto w = anholonomy(nc);
  NdArray<double> R({D, D, D, D});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int mu = 0; mu < D; ++mu)
        for (int nu = 0; nu < D; ++nu) {
          double s = nc.d(G(a, b, nu), mu).value() - nc.d(G(a, b, mu), nu).value();
          for (int l = 0; l < D; ++l) {
            s += G(a, l, mu).value() * G(l, b, nu).value() - G(a, l, nu).value() * G(l, b, mu).value();
            s -= w(l, mu, nu).value() * G(a, b, l).value();
          }
          R(a, b, mu, nu) = s;
        }
  return R;
}

NdArray<double> frame_torsion(const DConnectionCoeffs& conn, const NConnectionEval& nc) {
  const int D = conn.n + conn.m;
  auto G = conn.assemble();
  auto w = anholonomy(nc);
  NdArray<double> T({D, D, D});
  for (int l = 0; l < D; ++l)
    for (int mu = 0; mu < D; ++mu)
      for (int nu = 0; nu < D; ++nu)
        T(l, mu, nu) = G(l, nu, mu).value() - G(l, mu, nu).value() - w(l, mu, nu).value();
  return T;
}

}  // namespace anholkit
