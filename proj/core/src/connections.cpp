#include "anholkit/connections.hpp"

#include <algorithm>
#include <cmath>

namespace anholkit {

const char* to_string(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::berwald: return "berwald";
    case ConnectionKind::canonical: return "canonical";
    case ConnectionKind::christoffel: return "christoffel";
    case ConnectionKind::kahler: return "kahler";
    case ConnectionKind::hamilton_canonical: return "hamilton_canonical";
  }
  return "?";
}

ConnectionKind connection_kind_from_string(const std::string& s) {
  for (auto k : {ConnectionKind::berwald, ConnectionKind::canonical, ConnectionKind::christoffel,
                 ConnectionKind::kahler, ConnectionKind::hamilton_canonical})
    if (s == to_string(k)) return k;
  fail(ErrorKind::validation, "unknown connection '" + s + "'");
}

namespace {

int min_order(const NdArray<Jet>& a) {
  int k = kMaxJetOrder;
  for (const auto& j : a.data()) k = std::min(k, j.order());
  return k;
}

Jet zero_like(const Jet& j, int order) { return Jet(j.layout(), order, 0.0); }

const Jet& any_jet(const FieldJets& f) { return f.metric.g()(0, 0); }

}  // namespace

int DConnectionCoeffs::order() const {
  return std::min({min_order(L_h), min_order(L_v), min_order(C_h), min_order(C_v)});
}

NdArray<Jet> DConnectionCoeffs::assemble() const {
  const int D = n + m;
  const int k = order();
  NdArray<Jet> G({D, D, D}, zero_like(L_h(0, 0, 0), k));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) G(i, j, l) = L_h(i, j, l);
      for (int c = 0; c < m; ++c) G(i, j, n + c) = C_h(i, j, c);
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int l = 0; l < n; ++l) G(n + a, n + b, l) = L_v(a, b, l);
      for (int c = 0; c < m; ++c) G(n + a, n + b, n + c) = C_v(a, b, c);
    }
  return G;
}

NdArray<Jet> lccoef_h(const DMetricEval& metric, const NConnectionEval& nc) {
  const int n = nc.n();
  const auto& g = metric.g();
  const auto& gi = metric.g_inv();
  NdArray<Jet> dg({n, n, n});  // dg(r,k,j) = delta_j g_rk
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) dg(r, k, j) = nc.delta(g(r, k), j);
  NdArray<Jet> L({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Jet s = zero_like(dg(0, 0, 0), std::min(dg(0, 0, 0).order(), gi(0, 0).order()));
        for (int r = 0; r < n; ++r) s += gi(i, r) * (dg(r, k, j) + dg(j, r, k) - dg(j, k, r));
        L(i, j, k) = 0.5 * s;
      }
  return L;
}

NdArray<Jet> lccoef_v(const DMetricEval& metric, const NConnectionEval& nc) {
  const int m = nc.m();
  const auto& h = metric.h();
  const auto& hi = metric.h_inv();
  NdArray<Jet> dh({m, m, m});  // dh(b,d,c) = d_c h_bd
  for (int b = 0; b < m; ++b)
    for (int d = 0; d < m; ++d)
      for (int c = 0; c < m; ++c) dh(b, d, c) = nc.dfib(h(b, d), c);
  NdArray<Jet> C({m, m, m});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        Jet s = zero_like(dh(0, 0, 0), std::min(dh(0, 0, 0).order(), hi(0, 0).order()));
        for (int d = 0; d < m; ++d) s += hi(a, d) * (dh(b, d, c) + dh(c, d, b) - dh(b, c, d));
        C(a, b, c) = 0.5 * s;
      }
  return C;
}

DConnectionCoeffs berwald_connection(const FieldJets& f) {
  const auto& nc = f.nconn;
  const int n = nc.n(), m = nc.m();
  DConnectionCoeffs c{n, m, nc.chart().variance, lccoef_h(f.metric, nc), NdArray<Jet>({m, m, n}), {}, {}};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < n; ++k) c.L_v(a, b, k) = nc.dfib(nc.nv(a, k), b);
  c.C_v = lccoef_v(f.metric, nc);
  c.C_h = NdArray<Jet>({n, n, m}, zero_like(any_jet(f), c.C_v(0, 0, 0).order()));
  return c;
}

DConnectionCoeffs canonical_connection(const FieldJets& f) {
  const auto& nc = f.nconn;
  const auto& h = f.metric.h();
  const auto& hi = f.metric.h_inv();
  const auto& g = f.metric.g();
  const auto& gi = f.metric.g_inv();
  const int n = nc.n(), m = nc.m();
  DConnectionCoeffs c{n, m, nc.chart().variance, lccoef_h(f.metric, nc), NdArray<Jet>({m, m, n}),
                      NdArray<Jet>({n, n, m}), lccoef_v(f.metric, nc)};
  NdArray<Jet> dN({m, n, m});  // dN(d,i,b) = d_b Nv^d_i
  for (int d = 0; d < m; ++d)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < m; ++b) dN(d, i, b) = nc.dfib(nc.nv(d, i), b);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < n; ++i) {
        Jet s = zero_like(dN(0, 0, 0), dN(0, 0, 0).order());
        for (int cc = 0; cc < m; ++cc) {
          Jet t = nc.delta(h(b, cc), i);
          for (int d = 0; d < m; ++d) {
            t -= dN(d, i, b) * h(d, cc);
            t -= dN(d, i, cc) * h(d, b);
          }
          s += hi(a, cc) * t;
        }
        c.L_v(a, b, i) = dN(a, i, b) + 0.5 * s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int cc = 0; cc < m; ++cc) {
        Jet s = zero_like(any_jet(f), std::max(0, g(0, 0).order() - 1));
        for (int k = 0; k < n; ++k) s += gi(i, k) * nc.dfib(g(j, k), cc);
        c.C_h(i, j, cc) = 0.5 * s;
      }
  return c;
}

DConnectionCoeffs christoffel_connection(const FieldJets& f) {
  const auto& nc = f.nconn;
  const int n = nc.n(), m = nc.m();
  DConnectionCoeffs c{n, m, nc.chart().variance, lccoef_h(f.metric, nc), {}, {}, lccoef_v(f.metric, nc)};
  const int k = std::min(min_order(c.L_h), min_order(c.C_v));
  c.L_v = NdArray<Jet>({m, m, n}, zero_like(any_jet(f), k));
  c.C_h = NdArray<Jet>({n, n, m}, zero_like(any_jet(f), k));
  return c;
}

DConnectionCoeffs kahler_connection(const FieldJets& f) {
  const auto& nc = f.nconn;
  const int n = nc.n(), m = nc.m();
  if (n != m) fail(ErrorKind::dimension_mismatch, "the Kahler-type connection needs n = m");
  DConnectionCoeffs c{n, m, nc.chart().variance, lccoef_h(f.metric, nc), {}, {}, lccoef_v(f.metric, nc)};
  c.L_v = c.L_h;
  c.C_h = c.C_v;
  return c;
}

DConnectionCoeffs hamilton_canonical_connection(const FieldJets& f) {
  const auto& nc = f.nconn;
  const int n = nc.n(), m = nc.m();
  if (n != m) fail(ErrorKind::dimension_mismatch, "the Hamilton canonical connection needs n = m");
  const auto& g = f.metric.g();  // base metric g_ij
  const auto& h = f.metric.h();  // g^ij on the fiber
  DConnectionCoeffs c{n, m, nc.chart().variance, lccoef_h(f.metric, nc), NdArray<Jet>({m, m, n}),
                      NdArray<Jet>({n, n, m}), NdArray<Jet>({m, m, m})};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < n; ++k) c.L_v(a, b, k) = -c.L_h(b, a, k);
  // Cv_j^{ic} = -1/2 g_js d^s g^ic
  NdArray<Jet> Cv({n, n, n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int cc = 0; cc < n; ++cc) {
        Jet s = zero_like(any_jet(f), std::max(0, h(0, 0).order() - 1));
        for (int sidx = 0; sidx < n; ++sidx) s += g(j, sidx) * nc.dfib(h(i, cc), sidx);
        Cv(j, i, cc) = -0.5 * s;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int cc = 0; cc < n; ++cc) {
        c.C_h(i, j, cc) = Cv(j, i, cc);
        c.C_v(i, j, cc) = -Cv(i, j, cc);
      }
  return c;
}

DConnectionCoeffs build_connection(ConnectionKind kind, const FieldJets& f) {
  switch (kind) {
    case ConnectionKind::berwald: return berwald_connection(f);
    case ConnectionKind::canonical: return canonical_connection(f);
    case ConnectionKind::christoffel: return christoffel_connection(f);
    case ConnectionKind::kahler: return kahler_connection(f);
    case ConnectionKind::hamilton_canonical: return hamilton_canonical_connection(f);
  }
  fail(ErrorKind::validation, "unknown connection kind");
}

DTensor d_covariant_derivative(const DTensor& t, const DConnectionCoeffs& conn, const NConnectionEval& nc, int mu) {
  const int n = conn.n, m = conn.m;
  if (t.valence.size() > 4) fail(ErrorKind::unsupported_valence, "at most four indices");
  if (static_cast<int>(t.valence.size()) != t.comps.rank()) fail(ErrorKind::shape_mismatch, "valence/shape");
  for (std::size_t s = 0; s < t.valence.size(); ++s) {
    const bool horiz = t.valence[s] == Slot::h_upper || t.valence[s] == Slot::h_lower;
    if (t.comps.extent(static_cast<int>(s)) != (horiz ? n : m)) fail(ErrorKind::shape_mismatch, "slot extent");
  }
  const bool hdir = mu < n;
  const int dir = hdir ? mu : mu - n;
  auto gamma_h = [&](int i, int j) -> const Jet& { return hdir ? conn.L_h(i, j, dir) : conn.C_h(i, j, dir); };
  auto gamma_v = [&](int a, int b) -> const Jet& { return hdir ? conn.L_v(a, b, dir) : conn.C_v(a, b, dir); };

  DTensor out{t.valence, NdArray<Jet>(t.comps.shape())};
  if (t.comps.rank() == 0) {
    out.comps = NdArray<Jet>(std::vector<int>{});
  }
  for (std::size_t flat = 0; flat < t.comps.size(); ++flat) {
    auto idx = t.comps.unflatten(flat);
    Jet s = nc.d(t.comps.data()[flat], mu);
    for (std::size_t slot = 0; slot < t.valence.size(); ++slot) {
      const int own = idx[slot];
      const bool horiz = t.valence[slot] == Slot::h_upper || t.valence[slot] == Slot::h_lower;
      const bool upper = t.valence[slot] == Slot::h_upper || t.valence[slot] == Slot::v_upper;
      const int extent = horiz ? n : m;
      auto j = idx;
      for (int r = 0; r < extent; ++r) {
        j[slot] = r;
        const Jet& coef = horiz ? (upper ? gamma_h(own, r) : gamma_h(r, own)) : (upper ? gamma_v(own, r) : gamma_v(r, own));
        if (upper)
          s += coef * t.comps.at(j);
        else
          s -= coef * t.comps.at(j);
      }
    }
    out.comps.data()[flat] = s;
  }
  return out;
}

double MetricityReport::max() const { return std::max({hh, hv, vh, vv}); }

MetricityReport metricity_residual(const DConnectionCoeffs& conn, const FieldJets& f) {
  const int n = conn.n, m = conn.m;
  DTensor g{{Slot::h_lower, Slot::h_lower}, f.metric.g()};
  DTensor h{{Slot::v_lower, Slot::v_lower}, f.metric.h()};
  MetricityReport r;
  auto maxval = [](const DTensor& t) {
    double v = 0.0;
    for (const auto& j : t.comps.data()) v = std::max(v, std::fabs(j.value()));
    return v;
  };
  for (int k = 0; k < n; ++k) {
    r.hh = std::max(r.hh, maxval(d_covariant_derivative(g, conn, f.nconn, k)));
    r.hv = std::max(r.hv, maxval(d_covariant_derivative(h, conn, f.nconn, k)));
  }
  for (int c = 0; c < m; ++c) {
    r.vh = std::max(r.vh, maxval(d_covariant_derivative(g, conn, f.nconn, n + c)));
    r.vv = std::max(r.vv, maxval(d_covariant_derivative(h, conn, f.nconn, n + c)));
  }
  return r;
}

}  // namespace anholkit
