#include "anholkit/spinor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "anholkit/spaces.hpp"

namespace anholkit {
namespace {

Jet zero_jet(const Jet& like, int order) { return Jet(like.layout(), order, 0.0); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix remove_block_traces(CMatrix M, const DSigmaRep& rep) {
  const int Nh = rep.h.spinor_dim;
  const int Nv = rep.v.spinor_dim;
  auto h = M.topLeftCorner(Nh, Nh);
  h -= (h.trace() / static_cast<double>(Nh)) * CMatrix::Identity(Nh, Nh);
  auto v = M.bottomRightCorner(Nv, Nv);
  v -= (v.trace() / static_cast<double>(Nv)) * CMatrix::Identity(Nv, Nv);
  return M;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Fields, connection and frame at one point, at the order the curvature needs.
struct PointSetup {
  FieldJets f;
  DConnectionCoeffs conn;
  SpinorFrame frame;
  std::vector<Jet> vars;
};

PointSetup setup(const GeometrySource& space, ConnectionKind kind, const PointU& u) {
  const int K = required_order(space, Stage::curvature);
  PointSetup s;
  s.f = space.evaluate(u, K);
  s.conn = build_connection(kind, s.f);
  s.frame = orthonormal_frame(s.f.metric);
  auto coords = u.coords();
  s.vars = seed(coords, K);
  return s;
}

}  // namespace

DSigmaRep euclidean_d_sigma(int n, int m, SigmaNormalization norm) {
  return d_sigma(Signature{n, 0}, Signature{m, 0}, norm);
}

SpinorFrame orthonormal_frame(const DMetricEval& metric) {
  const auto& g = metric.g();
  const auto& h = metric.h();
  const int n = g.extent(0);
  const int m = h.extent(0);
  const int D = n + m;
  auto Lg = cholesky(g);
  auto Lh = cholesky(h);
  const Jet& proto = g(0, 0);
  const int order = std::min(g(0, 0).order(), h(0, 0).order());
  SpinorFrame fr;
  fr.l = JetMatrix({D, D}, zero_jet(proto, order));
  // l = L^T blockwise, so that l^T l = G.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fr.l(i, j) = Lg(j, i);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) fr.l(n + a, n + b) = Lh(b, a);
  fr.E = inverse(fr.l, ErrorKind::non_orthonormal_frame);

  Matrix E = values(fr.E);
  double res = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      double s = 0.0;
      for (int al = 0; al < D; ++al)
        for (int be = 0; be < D; ++be) {
          double G = 0.0;
          if (al < n && be < n) G = g(al, be).value();
          if (al >= n && be >= n) G = h(al - n, be - n).value();
          s += E(al, a) * G * E(be, b);
        }
      res = std::max(res, std::fabs(s - (a == b ? 1.0 : 0.0)));
    }
  fr.orthonormality = res;
  if (res > 1e-8) fail(ErrorKind::non_orthonormal_frame, "frame is not orthonormal for the block metric");
  return fr;
}

SpinorConnection spinor_connection(const DConnectionCoeffs& conn, const FieldJets& f, const SpinorFrame& frame,
                                   const DSigmaRep& rep) {
  const int D = conn.n + conn.m;
  if (rep.n() != conn.n || rep.m() != conn.m) fail(ErrorKind::shape_mismatch, "sigma blocks do not match the bundle");
  for (int a = 0; a < D; ++a)
    if (rep.frame_metric(a) != 1.0)
      fail(ErrorKind::unsupported_signature, "the orthonormal frame is built for positive-definite block metrics");
  const auto& nc = f.nconn;
  auto G = conn.assemble();
  const Jet& proto = G(0, 0, 0);
  const int order = std::min(conn.order(), frame.E(0, 0).order() - 1);

  SpinorConnection sc;
  sc.D = D;
  sc.omega = NdArray<Jet>({D, D, D}, zero_jet(proto, order));
  for (int mu = 0; mu < D; ++mu) {
    // A(alpha, b) = delta_mu E^alpha_b + Gamma^alpha_beta.mu E^beta_b
    NdArray<Jet> A({D, D}, zero_jet(proto, order));
    for (int al = 0; al < D; ++al)
      for (int b = 0; b < D; ++b) {
        Jet s = nc.d(frame.E(al, b), mu);
        for (int be = 0; be < D; ++be) s += G(al, be, mu) * frame.E(be, b);
        A(al, b) = s;
      }
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        Jet s = zero_jet(proto, order);
        for (int al = 0; al < D; ++al) s += frame.l(a, al) * A(al, b);
        sc.omega(a, b, mu) = s;
      }
  }

  const double c = 1.0 / (2.0 * rep.kappa());
  sc.generators.resize(static_cast<std::size_t>(D * D));
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      sc.generators[static_cast<std::size_t>(a * D + b)] =
          remove_block_traces(c * rep.frame_metric(b) * rep.sigma(a) * rep.sigma(b), rep);

  const int Ns = rep.spinor_dim();
  sc.gamma.assign(static_cast<std::size_t>(D), CMatrix::Zero(Ns, Ns));
  for (int mu = 0; mu < D; ++mu)
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) sc.gamma[static_cast<std::size_t>(mu)] += sc.omega(a, b, mu).value() * sc.generator(a, b);
  return sc;
}

SpinorCurvature spinor_curvature(const SpinorConnection& sc, const DConnectionCoeffs& conn, const FieldJets& f,
                                 const SpinorFrame& frame, const DSigmaRep& rep, const EpsilonObjects& eps_h,
                                 const EpsilonObjects& eps_v) {
  const int D = sc.D;
  const int Ns = rep.spinor_dim();
  const auto& nc = f.nconn;
  auto w = anholonomy(nc);
  (void)conn;

  SpinorCurvature out;
  out.D = D;
  out.X.assign(static_cast<std::size_t>(D * D), CMatrix::Zero(Ns, Ns));
  for (int mu = 0; mu < D; ++mu)
    for (int nu = 0; nu < D; ++nu) {
      if (mu == nu) continue;
      CMatrix X = sc.gamma[static_cast<std::size_t>(mu)] * sc.gamma[static_cast<std::size_t>(nu)] -
                  sc.gamma[static_cast<std::size_t>(nu)] * sc.gamma[static_cast<std::size_t>(mu)];
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
          double s = nc.d(sc.omega(a, b, nu), mu).value() - nc.d(sc.omega(a, b, mu), nu).value();
          for (int l = 0; l < D; ++l) s -= w(l, mu, nu).value() * sc.omega(a, b, l).value();
          if (s != 0.0) X += s * sc.generator(a, b);
        }
      out.X[static_cast<std::size_t>(mu * D + nu)] = remove_block_traces(X, rep);
    }

  // Frame components X_cd = X_mu.nu E^mu_c E^nu_d.
  Matrix E = values(frame.E);
  std::vector<CMatrix> Xf(static_cast<std::size_t>(D * D), CMatrix::Zero(Ns, Ns));
  for (int c = 0; c < D; ++c)
    for (int d = 0; d < D; ++d)
      for (int mu = 0; mu < D; ++mu)
        for (int nu = 0; nu < D; ++nu) {
          const double k = E(mu, c) * E(nu, d);
          if (k != 0.0) Xf[static_cast<std::size_t>(c * D + d)] += k * out.X[static_cast<std::size_t>(mu * D + nu)];
        }

  out.R_frame = NdArray<double>({D, D, D, D});
  for (int a = 0; a < D; ++a) {
    CMatrix sa = rep.frame_metric(a) * rep.sigma(a);
    const double norm = 2.0 / (rep.kappa() * rep.block_dim(a));
    for (int b = 0; b < D; ++b) {
      CMatrix sb = rep.sigma(b);
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const CMatrix& X = Xf[static_cast<std::size_t>(c * D + d)];
          out.R_frame(a, b, c, d) = norm * (sa * (X * sb - sb * X)).trace().real();
        }
    }
  }

  out.ricci = NdArray<double>({D, D});
  for (int b = 0; b < D; ++b)
    for (int d = 0; d < D; ++d) {
      double s = 0.0;
      for (int a = 0; a < D; ++a) s += out.R_frame(a, b, a, d);
      out.ricci(b, d) = s;
    }
  out.scalar = 0.0;
  for (int b = 0; b < D; ++b) out.scalar += rep.frame_metric(b) * out.ricci(b, b);
  out.einstein = NdArray<double>({D, D});
  out.phi = NdArray<double>({D, D});
  for (int b = 0; b < D; ++b)
    for (int d = 0; d < D; ++d) {
      const double eta = b == d ? rep.frame_metric(b) : 0.0;
      out.einstein(b, d) = out.ricci(b, d) - 0.5 * eta * out.scalar;
      out.phi(b, d) = eta * out.scalar / (2.0 * D) - 0.5 * out.ricci(b, d);
    }

  // Spinor-index form: X4(alpha, beta, gamma, delta) = sum_{c<d} (eps X_cd)_ab (eps sigma^cd)_gd.
  CMatrix eps = block_diag(eps_h.eps_low, eps_v.eps_low);
  if (eps.rows() != Ns) fail(ErrorKind::shape_mismatch, "epsilon size");
  out.X4 = NdArray<cd>({Ns, Ns, Ns, Ns}, cd(0.0, 0.0));
  for (int c = 0; c < D; ++c)
    for (int d = c + 1; d < D; ++d) {
      CMatrix sc_ = rep.frame_metric(c) * rep.sigma(c);
      CMatrix sd = rep.frame_metric(d) * rep.sigma(d);
      CMatrix S = eps * (0.5 * (sc_ * sd - sd * sc_));
      if (max_abs(S) == 0.0) continue;
      CMatrix XL = eps * Xf[static_cast<std::size_t>(c * D + d)];
      for (int al = 0; al < Ns; ++al)
        for (int be = 0; be < Ns; ++be) {
          const cd x = XL(al, be);
          if (x == cd(0.0, 0.0)) continue;
          for (int ga = 0; ga < Ns; ++ga)
            for (int de = 0; de < Ns; ++de) out.X4(al, be, ga, de) += x * S(ga, de);
        }
    }
  out.Psi = NdArray<cd>({Ns, Ns, Ns, Ns}, cd(0.0, 0.0));
  for (int al = 0; al < Ns; ++al)
    for (int be = 0; be < Ns; ++be)
      for (int ga = 0; ga < Ns; ++ga)
        for (int de = 0; de < Ns; ++de) {
          const std::array<int, 3> s{al, ga, de};
          std::array<int, 3> p{0, 1, 2};
          cd acc(0.0, 0.0);
          do {
            acc += out.X4(s[static_cast<std::size_t>(p[0])], be, s[static_cast<std::size_t>(p[1])],
                          s[static_cast<std::size_t>(p[2])]);
          } while (std::next_permutation(p.begin(), p.end()));
          out.Psi(al, be, ga, de) = acc / 6.0;
        }
  return out;
}

SpinorCrossCheck spinor_tensor_cross_check(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                           SigmaNormalization norm) {
  auto s = setup(space, kind, u);
  const auto& chart = space.chart();
  const int D = chart.dim();
  DSigmaRep rep = euclidean_d_sigma(chart.n, chart.m, norm);
  auto eps_h = default_epsilon(rep.h);
  auto eps_v = default_epsilon(rep.v);
  auto sc = spinor_connection(s.conn, s.f, s.frame, rep);
  auto curv = spinor_curvature(sc, s.conn, s.f, s.frame, rep, eps_h, eps_v);

  SpinorCrossCheck out;
  out.spinor_scalar = curv.scalar;
  out.tensor_scalar = ricci(d_curvatures(s.conn, s.f.nconn), s.f.metric).scalar;
  out.scalar_diff = std::fabs(out.spinor_scalar - out.tensor_scalar);
  out.frame_orthonormality = s.frame.orthonormality;

  auto Rt = frame_curvature(s.conn, s.f.nconn);
  Matrix l = values(s.frame.l);
  Matrix E = values(s.frame.E);
  double diff = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          double t = 0.0;
          for (int al = 0; al < D; ++al)
            for (int be = 0; be < D; ++be) {
              const double lb = l(a, al) * E(be, b);
              if (lb == 0.0) continue;
              for (int mu = 0; mu < D; ++mu)
                for (int nu = 0; nu < D; ++nu) t += lb * Rt(al, be, mu, nu) * E(mu, c) * E(nu, d);
            }
          diff = std::max(diff, std::fabs(t - curv.R_frame(a, b, c, d)));
        }
  out.curvature_diff = diff;

  const int Ns = rep.spinor_dim();
  double sym = 0.0;
  for (int al = 0; al < Ns; ++al)
    for (int be = 0; be < Ns; ++be)
      for (int ga = 0; ga < Ns; ++ga)
        for (int de = 0; de < Ns; ++de) {
          const cd v = curv.Psi(al, be, ga, de);
          sym = std::max({sym, std::abs(v - curv.Psi(ga, be, al, de)), std::abs(v - curv.Psi(de, be, ga, al)),
                          std::abs(v - curv.Psi(al, be, de, ga))});
        }
  out.psi_symmetry = sym;
  return out;
}

double leibniz_transfer_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                 std::uint64_t seed_value, SigmaNormalization norm) {
  auto s = setup(space, kind, u);
  const auto& chart = space.chart();
  const int D = chart.dim();
  DSigmaRep rep = euclidean_d_sigma(chart.n, chart.m, norm);
  auto sc = spinor_connection(s.conn, s.f, s.frame, rep);
  const auto& nc = s.f.nconn;
  auto G = s.conn.assemble();

  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  // v^alpha = c^alpha + d^alpha_mu (u - u0)^mu
  std::vector<Jet> v;
  for (int al = 0; al < D; ++al) {
    Jet j = zero_jet(s.vars[0], s.vars[0].order()) + dist(rng);
    for (int mu = 0; mu < D; ++mu) j += dist(rng) * (s.vars[static_cast<std::size_t>(mu)] - s.vars[static_cast<std::size_t>(mu)].value());
    v.push_back(j);
  }
  std::vector<Jet> lv;
  for (int a = 0; a < D; ++a) {
    Jet t = zero_jet(s.vars[0], s.frame.l(0, 0).order());
    for (int al = 0; al < D; ++al) t += s.frame.l(a, al) * v[static_cast<std::size_t>(al)];
    lv.push_back(t);
  }
  Matrix l = values(s.frame.l);
  const int Ns = rep.spinor_dim();
  CMatrix V = CMatrix::Zero(Ns, Ns);
  for (int a = 0; a < D; ++a) V += lv[static_cast<std::size_t>(a)].value() * rep.sigma(a);

  double res = 0.0;
  for (int mu = 0; mu < D; ++mu) {
    CMatrix spinor_side = sc.gamma[static_cast<std::size_t>(mu)] * V - V * sc.gamma[static_cast<std::size_t>(mu)];
    for (int a = 0; a < D; ++a) spinor_side += nc.d(lv[static_cast<std::size_t>(a)], mu).value() * rep.sigma(a);
    CMatrix tensor_side = CMatrix::Zero(Ns, Ns);
    for (int a = 0; a < D; ++a) {
      double Dv = 0.0;
      for (int al = 0; al < D; ++al) {
        double t = nc.d(v[static_cast<std::size_t>(al)], mu).value();
        for (int be = 0; be < D; ++be) t += G(al, be, mu).value() * v[static_cast<std::size_t>(be)].value();
        Dv += l(a, al) * t;
      }
      tensor_side += Dv * rep.sigma(a);
    }
    res = std::max(res, max_abs(CMatrix(spinor_side - tensor_side)));
  }
  return res;
}

double torsion_commutator_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                   std::uint64_t seed_value) {
  auto s = setup(space, kind, u);
  const int D = space.chart().dim();
  const auto& nc = s.f.nconn;
  auto G = s.conn.assemble();
  auto T = frame_torsion(s.conn, nc);

  std::mt19937_64 rng(seed_value);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Jet> du;
  for (const auto& x : s.vars) du.push_back(x - x.value());
  Jet f = zero_jet(s.vars[0], s.vars[0].order()) + dist(rng);
  for (int a = 0; a < D; ++a) {
    f += dist(rng) * du[static_cast<std::size_t>(a)];
    for (int b = a; b < D; ++b) f += dist(rng) * (du[static_cast<std::size_t>(a)] * du[static_cast<std::size_t>(b)]);
  }
  std::vector<Jet> df;
  for (int mu = 0; mu < D; ++mu) df.push_back(nc.d(f, mu));

  double res = 0.0;
  for (int mu = 0; mu < D; ++mu)
    for (int nu = 0; nu < D; ++nu) {
      // D_mu (Df)_nu = d_mu d_nu f - Gamma^l_nu.mu d_l f
      double box = nc.d(df[static_cast<std::size_t>(nu)], mu).value() - nc.d(df[static_cast<std::size_t>(mu)], nu).value();
      double tor = 0.0;
      for (int l = 0; l < D; ++l) {
        const double dl = df[static_cast<std::size_t>(l)].value();
        box -= (G(l, nu, mu).value() - G(l, mu, nu).value()) * dl;
        tor += T(l, mu, nu) * dl;
      }
      res = std::max(res, std::fabs(box + tor));
    }
  return res;
}

}  // namespace anholkit
