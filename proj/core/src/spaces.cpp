#include "anholkit/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace anholkit {

namespace {

double fiber_norm(const PointU& u) {
  double s = 0.0;
  for (double v : u.fiber) s += v * v;
  return std::sqrt(s);
}

bool positive_definite_at(const GeometrySource& space, const PointU& u) {
  try {
    FieldJets f = space.evaluate(u, space.depth());
    return symmetric_eigenvalues(f.metric.g_values()).front() > 0.0 &&
           symmetric_eigenvalues(f.metric.h_values()).front() > 0.0;
  } catch (const Error&) {
    return false;
  }
}

BundleChart chart_of(const ScalarField& f, Variance expected, const char* what) {
  const auto& ctx = f.context();
  if (ctx.variance() != expected)
    fail(ErrorKind::validation, std::string(what) + " expects a " +
                                    (expected == Variance::vector ? "vector" : "covector") + " chart");
  if (ctx.n() != ctx.m()) fail(ErrorKind::dimension_mismatch, std::string(what) + " needs n = m");
  return BundleChart(ctx.n(), ctx.m(), ctx.variance());
}

// 1/2 d^2 f / dv_a dv_b over the fiber variables.
NdArray<Jet> fiber_hessian(const Jet& f, int n, int m) {
  NdArray<Jet> H({m, m});
  for (int a = 0; a < m; ++a) {
    Jet da = f.derivative(n + a);
    for (int b = a; b < m; ++b) {
      Jet v = 0.5 * da.derivative(n + b);
      H(a, b) = v;
      H(b, a) = v;
    }
  }
  return H;
}

// Christoffel symbols of a metric field over the x variables: G(i,j,k) = gamma^i_jk.
NdArray<Jet> christoffel_x(const NdArray<Jet>& g, const NdArray<Jet>& gi, int n) {
  NdArray<Jet> dg({n, n, n});
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) dg(r, k, j) = g(r, k).derivative(j);
  NdArray<Jet> G({n, n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Jet s(dg(0, 0, 0).layout(), std::min(dg(0, 0, 0).order(), gi(0, 0).order()), 0.0);
        for (int r = 0; r < n; ++r) s += gi(i, r) * (dg(r, k, j) + dg(j, r, k) - dg(j, k, r));
        G(i, j, k) = 0.5 * s;
        G(i, k, j) = G(i, j, k);
      }
  return G;
}

}  // namespace

FinslerSpace::FinslerSpace(ScalarField F, double margin)
    : chart_(chart_of(F, Variance::vector, "Finsler space")), F_(std::move(F)), margin_(margin) {}

NdArray<Jet> FinslerSpace::metric_jets(std::span<const Jet> vars) const {
  Jet f = anholkit::evaluate<Jet>(F_, vars);
  return fiber_hessian(f * f, chart_.n, chart_.m);
}

bool FinslerSpace::admissible(const PointU& u) const { return fiber_norm(u) >= margin_; }

FieldJets FinslerSpace::evaluate(const PointU& u, int order) const {
  const int n = chart_.n;
  auto c = u.coords();
  auto vars = seed(c, order);
  NdArray<Jet> g = metric_jets(vars);
  NdArray<Jet> gi = inverse(g, ErrorKind::rank_deficient_hessian);
  NdArray<Jet> gamma = christoffel_x(g, gi, n);
  NdArray<Jet> N({n, n});
  for (int i = 0; i < n; ++i) {
    Jet G(gamma(0, 0, 0).layout(), gamma(0, 0, 0).order(), 0.0);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) G += gamma(i, j, k) * vars[static_cast<std::size_t>(n + j)] * vars[static_cast<std::size_t>(n + k)];
    for (int j = 0; j < n; ++j) N(i, j) = 0.5 * G.derivative(n + j);
  }
  FieldJets out;
  out.metric = DMetricEval(chart_, g, g);
  out.nconn = NConnectionEval(chart_, N);
  return out;
}

LagrangeSpace::LagrangeSpace(ScalarField L, HessianMode mode, double margin)
    : chart_(chart_of(L, Variance::vector, "Lagrange space")), L_(std::move(L)), mode_(mode), margin_(margin) {}

bool LagrangeSpace::admissible(const PointU& u) const { return fiber_norm(u) >= margin_; }

FieldJets LagrangeSpace::evaluate(const PointU& u, int order) const {
  const int n = chart_.n;
  auto c = u.coords();
  auto vars = seed(c, order);
  Jet L = anholkit::evaluate<Jet>(L_, vars);
  if (mode_ == HessianMode::of_L_squared) L = L * L;
  NdArray<Jet> g = fiber_hessian(L, n, n);
  NdArray<Jet> gi = inverse(g, ErrorKind::rank_deficient_hessian);
  std::vector<Jet> B;
  for (int k = 0; k < n; ++k) {
    Jet dyk = L.derivative(n + k);
    Jet s = -L.derivative(k).truncated(order - 2);
    for (int h = 0; h < n; ++h) s += dyk.derivative(h) * vars[static_cast<std::size_t>(n + h)];
    B.push_back(s);
  }
  NdArray<Jet> N({n, n});
  for (int i = 0; i < n; ++i) {
    Jet G(g(0, 0).layout(), order - 2, 0.0);
    for (int k = 0; k < n; ++k) G += gi(i, k) * B[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j) N(i, j) = 0.5 * G.derivative(n + j);
  }
  FieldJets out;
  out.metric = DMetricEval(chart_, g, g);
  out.nconn = NConnectionEval(chart_, N);
  return out;
}

CartanSpace::CartanSpace(ScalarField K, double margin)
    : chart_(chart_of(K, Variance::covector, "Cartan space")), K_(std::move(K)), margin_(margin) {}

bool CartanSpace::admissible(const PointU& u) const { return fiber_norm(u) >= margin_; }

FieldJets CartanSpace::evaluate(const PointU& u, int order) const {
  const int n = chart_.n;
  auto c = u.coords();
  auto vars = seed(c, order);
  Jet k = anholkit::evaluate<Jet>(K_, vars);
  NdArray<Jet> gu = fiber_hessian(k * k, n, n);  // g^ij
  NdArray<Jet> gl = inverse(gu, ErrorKind::rank_deficient_hessian);  // g_ij
  NdArray<Jet> gamma = christoffel_x(gl, gu, n);
  std::vector<Jet> praised;
  for (int l = 0; l < n; ++l) {
    Jet s(gu(0, 0).layout(), gu(0, 0).order(), 0.0);
    for (int mm = 0; mm < n; ++mm) s += gu(l, mm) * vars[static_cast<std::size_t>(n + mm)];
    praised.push_back(s);
  }
  // A_n = gamma^k_nl p_k p^l
  std::vector<Jet> A;
  for (int nn = 0; nn < n; ++nn) {
    Jet s(gamma(0, 0, 0).layout(), gamma(0, 0, 0).order(), 0.0);
    for (int kk = 0; kk < n; ++kk)
      for (int l = 0; l < n; ++l)
        s += gamma(kk, nn, l) * vars[static_cast<std::size_t>(n + kk)] * praised[static_cast<std::size_t>(l)];
    A.push_back(s);
  }
  NdArray<Jet> N({n, n});  // N(a, i) = N_ia
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet s(gamma(0, 0, 0).layout(), gamma(0, 0, 0).order(), 0.0);
      for (int kk = 0; kk < n; ++kk) s += gamma(kk, i, j) * vars[static_cast<std::size_t>(n + kk)];
      for (int nn = 0; nn < n; ++nn) s -= 0.5 * A[static_cast<std::size_t>(nn)] * gl(i, j).derivative(n + nn);
      N(i, j) = s;
      N(j, i) = s;
    }
  FieldJets out;
  out.metric = DMetricEval(chart_, gl, gu);
  out.nconn = NConnectionEval(chart_, N);
  return out;
}

HamiltonSpace::HamiltonSpace(ScalarField H, double margin)
    : chart_(chart_of(H, Variance::covector, "Hamilton space")), H_(std::move(H)), margin_(margin) {}

bool HamiltonSpace::admissible(const PointU& u) const { return fiber_norm(u) >= margin_; }

FieldJets HamiltonSpace::evaluate(const PointU& u, int order) const {
  const int n = chart_.n;
  auto c = u.coords();
  auto vars = seed(c, order);
  Jet H = anholkit::evaluate<Jet>(H_, vars);
  NdArray<Jet> gu = fiber_hessian(H, n, n);
  NdArray<Jet> gl = inverse(gu, ErrorKind::rank_deficient_hessian);
  // d^2 H / dp_k dx^j
  NdArray<Jet> Hpx({n, n});
  for (int k = 0; k < n; ++k) {
    Jet hp = H.derivative(n + k);
    for (int j = 0; j < n; ++j) Hpx(k, j) = hp.derivative(j);
  }
  NdArray<Jet> N({n, n});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet pb(gl(0, 0).layout(), order - 3, 0.0);
      for (int k = 0; k < n; ++k) {
        pb += gl(i, j).derivative(n + k) * H.derivative(k);
        pb -= H.derivative(n + k) * gl(i, j).derivative(k);
      }
      Jet s = 0.25 * pb;
      for (int k = 0; k < n; ++k) s -= 0.5 * (gl(i, k) * Hpx(k, j) + gl(j, k) * Hpx(k, i));
      N(i, j) = s;
      N(j, i) = s;
    }
  FieldJets out;
  out.metric = DMetricEval(chart_, gl, gu);
  out.nconn = NConnectionEval(chart_, N);
  return out;
}

std::unique_ptr<RawBundle> generalized_lagrange(const BundleChart& chart, NdArray<ScalarField> g,
                                                NdArray<ScalarField> N) {
  if (chart.variance != Variance::vector || chart.n != chart.m)
    fail(ErrorKind::dimension_mismatch, "generalized Lagrange spaces live on TM");
  NdArray<ScalarField> h = g;
  return std::make_unique<RawBundle>(DMetricField(chart, std::move(g), std::move(h)),
                                     NConnectionField(chart, std::move(N)), "generalized_lagrange");
}

GeneralizedHamilton::GeneralizedHamilton(BundleChart chart, NdArray<ScalarField> g_upper, NdArray<ScalarField> N)
    : chart_(std::move(chart)), g_upper_(std::move(g_upper)), N_(std::move(N)) {
  if (chart_.variance != Variance::covector || chart_.n != chart_.m)
    fail(ErrorKind::dimension_mismatch, "generalized Hamilton spaces live on T*M");
  DMetricField check(chart_, g_upper_, g_upper_);
  NConnectionField ncheck(chart_, N_);
}

FieldJets GeneralizedHamilton::evaluate(const PointU& u, int order) const {
  auto c = u.coords();
  auto vars = seed(c, order);
  NdArray<Jet> gu = evaluate_fields(g_upper_, vars);
  NdArray<Jet> gl = inverse(gu, ErrorKind::singular_matrix);
  FieldJets out;
  out.metric = DMetricEval(chart_, gl, gu);
  out.nconn = NConnectionEval(chart_, evaluate_fields(N_, vars));
  return out;
}

int required_order(const GeometrySource& space, Stage stage) {
  int extra = 0;
  switch (stage) {
    case Stage::fields: extra = 0; break;
    case Stage::connection: extra = 1; break;
    case Stage::curvature: extra = 2; break;
    case Stage::connection_partials: extra = 3; break;
  }
  const int k = space.depth() + extra;
  if (k > kMaxJetOrder)
    fail(ErrorKind::order_exceeded, "stage needs jet order " + std::to_string(k) + " above the cap");
  return k;
}

std::vector<PointU> sample_points(const GeometrySource& space, const SamplerSpec& spec, SamplerStats* stats) {
  const auto& chart = space.chart();
  if (static_cast<int>(spec.box.size()) != chart.dim())
    fail(ErrorKind::dimension_mismatch, "sampler box needs one interval per coordinate");
  std::mt19937_64 rng(spec.seed);
  std::vector<PointU> out;
  const long max_attempts = 1000L * std::max(spec.count, 1);
  SamplerStats local;
  SamplerStats& st = stats ? *stats : local;
  std::vector<double> c(static_cast<std::size_t>(chart.dim()));
  while (static_cast<int>(out.size()) < spec.count) {
    if (++st.attempts > max_attempts) fail(ErrorKind::validation, "sampler could not find admissible points");
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::uniform_real_distribution<double> dist(spec.box[i].first, spec.box[i].second);
      c[i] = dist(rng);
    }
    PointU u = PointU::from_coords(chart, c);
    if (fiber_norm(u) < spec.null_margin || !space.admissible(u)) {
      ++st.rejected_margin;
      continue;
    }
    if (spec.require_positive_definite && !positive_definite_at(space, u)) {
      ++st.rejected_metric;
      continue;
    }
    out.push_back(std::move(u));
  }
  return out;
}

double HomogeneityReport::max() const { return std::max({f_homogeneity, g_homogeneity, euler, cartan_contraction}); }

HomogeneityReport homogeneity_report(const FinslerSpace& space, const std::vector<PointU>& points,
                                     const std::vector<double>& lambdas) {
  const int n = space.chart().n;
  HomogeneityReport r;
  for (const auto& u : points) {
    auto c = u.coords();
    const double F = anholkit::evaluate<double>(space.F(), c);
    auto vars = seed(c, 3);
    auto g = space.metric_jets(vars);
    for (double lam : lambdas) {
      auto cl = c;
      for (int a = 0; a < n; ++a) cl[static_cast<std::size_t>(n + a)] *= lam;
      const double Fl = anholkit::evaluate<double>(space.F(), cl);
      r.f_homogeneity = std::max(r.f_homogeneity, std::fabs(Fl - lam * F));
      auto gl = space.metric_jets(seed(cl, 2));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          r.g_homogeneity = std::max(r.g_homogeneity, std::fabs(gl(i, j).value() - g(i, j).value()));
    }
    double e = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e += g(i, j).value() * c[static_cast<std::size_t>(n + i)] * c[static_cast<std::size_t>(n + j)];
    r.euler = std::max(r.euler, std::fabs(e - F * F));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += g(i, j).derivative(n + k).value() * c[static_cast<std::size_t>(n + k)];
        r.cartan_contraction = std::max(r.cartan_contraction, std::fabs(s));
      }
  }
  return r;
}

void check_positive_definite(const GeometrySource& space, const std::vector<PointU>& points) {
  std::ostringstream bad;
  int failures = 0;
  for (const auto& u : points) {
    FieldJets f = space.evaluate(u, space.depth());
    auto eg = symmetric_eigenvalues(f.metric.g_values());
    auto eh = symmetric_eigenvalues(f.metric.h_values());
    if (eg.front() <= 0.0 || eh.front() <= 0.0) {
      if (failures < 5) {
        bad << " [";
        for (double v : u.coords()) bad << v << ' ';
        bad << ']';
      }
      ++failures;
    }
  }
  if (failures > 0)
    fail(ErrorKind::non_positive_definite,
         "metric is not positive definite at " + std::to_string(failures) + " point(s):" + bad.str());
}

double AlmostStructureReport::max() const { return std::max({j_squared, metric_compat, dj, dtheta}); }

namespace {

// theta_AB in coordinates for theta = g_ij delta y^i ^ dx^j.
Matrix theta_components(const GeometrySource& space, const PointU& u) {
  const int n = space.chart().n;
  FieldJets f = space.evaluate(u, space.depth());
  Matrix th({2 * n, 2 * n}, 0.0);
  auto add = [&](int a, int b, double v) {
    th(a, b) += v;
    th(b, a) -= v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double gij = f.metric.g()(i, j).value();
      add(n + i, j, gij);
      for (int k = 0; k < n; ++k) add(k, j, gij * f.nconn.nv(i, k).value());
    }
  return th;
}

}  // namespace

AlmostStructureReport almost_structure_checks(const GeometrySource& space, const PointU& u, double step) {
  const auto& chart = space.chart();
  if (chart.variance != Variance::vector || chart.n != chart.m)
    fail(ErrorKind::dimension_mismatch, "almost complex structure needs TM with n = m");
  const int n = chart.n, D = 2 * n;
  AlmostStructureReport r;
  FieldJets f = space.evaluate(u, required_order(space, Stage::connection));
  Matrix J({D, D}, 0.0);
  for (int i = 0; i < n; ++i) {
    J(n + i, i) = -1.0;
    J(i, n + i) = 1.0;
  }
  Matrix G({D, D}, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      G(i, j) = f.metric.g()(i, j).value();
      G(n + i, n + j) = f.metric.h()(i, j).value();
    }
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      double jj = 0.0, jgj = 0.0;
      for (int c = 0; c < D; ++c) jj += J(a, c) * J(c, b);
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) jgj += J(c, a) * G(c, d) * J(d, b);
      r.j_squared = std::max(r.j_squared, std::fabs(jj + (a == b ? 1.0 : 0.0)));
      r.metric_compat = std::max(r.metric_compat, std::fabs(jgj - G(a, b)));
    }
  auto Gam = kahler_connection(f).assemble();
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int mu = 0; mu < D; ++mu) {
        double s = 0.0;
        for (int l = 0; l < D; ++l) s += Gam(a, l, mu).value() * J(l, b) - Gam(l, b, mu).value() * J(a, l);
        r.dj = std::max(r.dj, std::fabs(s));
      }
  // d theta by central differences with one Richardson level.
  auto coords = u.coords();
  std::vector<Matrix> dth(static_cast<std::size_t>(D));
  for (int A = 0; A < D; ++A) {
    auto diff = [&](double h) {
      auto cp = coords, cm = coords;
      cp[static_cast<std::size_t>(A)] += h;
      cm[static_cast<std::size_t>(A)] -= h;
      Matrix tp = theta_components(space, PointU::from_coords(chart, cp));
      Matrix tm = theta_components(space, PointU::from_coords(chart, cm));
      Matrix d({D, D});
      for (std::size_t i = 0; i < d.size(); ++i) d.data()[i] = (tp.data()[i] - tm.data()[i]) / (2 * h);
      return d;
    };
    Matrix coarse = diff(step), fine = diff(step / 2);
    Matrix d({D, D});
    for (std::size_t i = 0; i < d.size(); ++i) d.data()[i] = (4 * fine.data()[i] - coarse.data()[i]) / 3;
    dth[static_cast<std::size_t>(A)] = d;
  }
  for (int A = 0; A < D; ++A)
    for (int B = A + 1; B < D; ++B)
      for (int C = B + 1; C < D; ++C) {
        const double v = dth[static_cast<std::size_t>(A)](B, C) + dth[static_cast<std::size_t>(B)](C, A) +
                         dth[static_cast<std::size_t>(C)](A, B);
        r.dtheta = std::max(r.dtheta, std::fabs(v));
      }
  return r;
}

namespace {

Matrix eval_matrix(const NdArray<ScalarField>& K, std::span<const double> coords) {
  Matrix out(K.shape());
  for (std::size_t i = 0; i < K.size(); ++i) out.data()[i] = anholkit::evaluate<double>(K.data()[i], coords);
  return out;
}

}  // namespace

TransformReport coordinate_transform_check(const FinslerSpace& space, const CoordinateTransform& t,
                                           const std::vector<PointU>& points) {
  const int n = space.chart().n;
  if (t.K.shape() != std::vector<int>{n, n}) fail(ErrorKind::dimension_mismatch, "K must be m x m");
  if (!t.base_map.empty() && static_cast<int>(t.base_map.size()) != n)
    fail(ErrorKind::dimension_mismatch, "base map needs n components");
  TransformReport r;
  for (const auto& u : points) {
    auto c = u.coords();
    Matrix K = eval_matrix(t.K, c);
    Matrix Ki = inverse(K, ErrorKind::singular_transform);
    std::vector<double> cp(c.size());
    for (int i = 0; i < n; ++i)
      cp[static_cast<std::size_t>(i)] = t.base_map.empty() ? c[static_cast<std::size_t>(i)]
                                                           : anholkit::evaluate<double>(t.base_map[static_cast<std::size_t>(i)], c);
    for (int a = 0; a < n; ++a) {
      double s = 0.0;
      for (int b = 0; b < n; ++b) s += K(a, b) * c[static_cast<std::size_t>(n + b)];
      cp[static_cast<std::size_t>(n + a)] = s;
    }
    r.f_invariance = std::max(r.f_invariance, std::fabs(anholkit::evaluate<double>(space.F(), cp) -
                                                         anholkit::evaluate<double>(space.F(), c)));
    // Fiber Hessian of y' -> F(x, K^-1 y')^2 / 2 at y' = K y.
    std::vector<double> seedpt(c);
    for (int a = 0; a < n; ++a) seedpt[static_cast<std::size_t>(n + a)] = cp[static_cast<std::size_t>(n + a)];
    auto vars = seed(seedpt, 2);
    std::vector<Jet> pulled(vars.begin(), vars.begin() + n);
    for (int a = 0; a < n; ++a) {
      Jet s(vars[0].layout(), 2, 0.0);
      for (int b = 0; b < n; ++b) s += Ki(a, b) * vars[static_cast<std::size_t>(n + b)];
      pulled.push_back(s);
    }
    auto gprime = space.metric_jets(pulled);
    auto g = space.metric_jets(seed(c, 2));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double pb = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) pb += Ki(i, a) * g(i, j).value() * Ki(j, b);
        r.metric_covariance = std::max(r.metric_covariance, std::fabs(gprime(a, b).value() - pb));
      }
  }
  return r;
}

TransformReport coordinate_transform_check(const BundleChart& chart, const NdArray<ScalarField>& g,
                                           const Matrix& K, const std::vector<PointU>& points) {
  const int n = chart.n, m = chart.m;
  if (K.shape() != std::vector<int>{m, m}) fail(ErrorKind::dimension_mismatch, "K must be m x m");
  if (g.shape() != std::vector<int>{m, m}) fail(ErrorKind::dimension_mismatch, "fiber metric must be m x m");
  Matrix Ki = inverse(K, ErrorKind::singular_transform);
  std::vector<NodePtr> repl;
  for (int i = 0; i < n; ++i) repl.push_back(Node::variable(i));
  for (int a = 0; a < m; ++a) {
    NodePtr s;
    for (int b = 0; b < m; ++b) {
      NodePtr term = Node::binary(Op::mul, Node::constant(Ki(a, b)), Node::variable(n + b));
      s = s ? Node::binary(Op::add, s, term) : term;
    }
    repl.push_back(s);
  }
  NdArray<ScalarField> gp({m, m});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      NodePtr s;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          NodePtr gij = substitute(g(i, j), repl, chart.context).root_ptr();
          NodePtr term = Node::binary(Op::mul, Node::constant(Ki(i, a) * Ki(j, b)), gij);
          s = s ? Node::binary(Op::add, s, term) : term;
        }
      gp(a, b) = ScalarField(s, chart.context);
    }
  TransformReport r;
  for (const auto& u : points) {
    auto c = u.coords();
    auto cp = c;
    for (int a = 0; a < m; ++a) {
      double s = 0.0;
      for (int b = 0; b < m; ++b) s += K(a, b) * c[static_cast<std::size_t>(n + b)];
      cp[static_cast<std::size_t>(n + a)] = s;
    }
    Matrix gv = eval_matrix(g, c);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double pb = 0.0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) pb += Ki(i, a) * gv(i, j) * Ki(j, b);
        r.metric_covariance =
            std::max(r.metric_covariance, std::fabs(anholkit::evaluate<double>(gp(a, b), cp) - pb));
      }
  }
  return r;
}

}  // namespace anholkit
