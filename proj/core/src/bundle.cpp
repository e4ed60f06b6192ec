#include "anholkit/bundle.hpp"

namespace anholkit {

std::vector<double> PointU::coords() const {
  std::vector<double> c(x);
  c.insert(c.end(), fiber.begin(), fiber.end());
  return c;
}

PointU PointU::from_coords(const BundleChart& chart, std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != chart.dim()) fail(ErrorKind::dimension_mismatch, "point length");
  PointU u;
  u.x.assign(coords.begin(), coords.begin() + chart.n);
  u.fiber.assign(coords.begin() + chart.n, coords.end());
  return u;
}

namespace {

void check_shape(const NdArray<ScalarField>& a, std::vector<int> shape, const char* what) {
  if (a.shape() != shape) fail(ErrorKind::dimension_mismatch, std::string(what) + " has the wrong shape");
}

void check_context(const NdArray<ScalarField>& a, const BundleChart& chart) {
  for (const auto& f : a.data())
    if (f.empty() || !(f.context() == chart.context))
      fail(ErrorKind::dimension_mismatch, "field expression is not bound to the chart");
}

void check_symmetric(const NdArray<ScalarField>& a, const char* what) {
  for (int i = 0; i < a.extent(0); ++i)
    for (int j = i + 1; j < a.extent(0); ++j)
      if (!(a(i, j) == a(j, i))) fail(ErrorKind::validation, std::string(what) + " must be symmetric");
}

std::vector<Jet> seed_point(const PointU& u, int order) {
  auto c = u.coords();
  return seed(c, order);
}

}  // namespace

NConnectionField::NConnectionField(BundleChart c, NdArray<ScalarField> e) : chart(std::move(c)), entries(std::move(e)) {
  check_shape(entries, {chart.m, chart.n}, "N");
  check_context(entries, chart);
}

DMetricField::DMetricField(BundleChart c, NdArray<ScalarField> gg, NdArray<ScalarField> hh)
    : chart(std::move(c)), g(std::move(gg)), h(std::move(hh)) {
  check_shape(g, {chart.n, chart.n}, "g");
  check_shape(h, {chart.m, chart.m}, "h");
  check_context(g, chart);
  check_context(h, chart);
  check_symmetric(g, "g");
  check_symmetric(h, "h");
}

NConnectionEval::NConnectionEval(BundleChart chart, NdArray<Jet> raw)
    : chart_(std::move(chart)), raw_(std::move(raw)), nv_(raw_) {
  if (raw_.shape() != std::vector<int>{chart_.m, chart_.n}) fail(ErrorKind::dimension_mismatch, "N shape");
  if (chart_.variance == Variance::covector)
    for (auto& j : nv_.data()) j = -j;
}

int NConnectionEval::order() const {
  int k = kMaxJetOrder;
  for (const auto& j : raw_.data()) k = std::min(k, j.order());
  return k;
}

double NConnectionEval::dx(int a, int i, int j) const { return raw_(a, i).derivative(j).value(); }
double NConnectionEval::dfiber(int a, int i, int b) const { return raw_(a, i).derivative(chart_.n + b).value(); }

Jet NConnectionEval::delta(const Jet& f, int i) const {
  Jet out = f.derivative(i);
  for (int a = 0; a < chart_.m; ++a) out -= nv_(a, i) * f.derivative(chart_.n + a);
  return out;
}

DMetricEval::DMetricEval(BundleChart chart, NdArray<Jet> g, NdArray<Jet> h)
    : chart_(std::move(chart)), g_(std::move(g)), h_(std::move(h)) {
  g_inv_ = inverse(g_, ErrorKind::singular_matrix);
  h_inv_ = inverse(h_, ErrorKind::singular_fiber_metric);
}

RawBundle::RawBundle(DMetricField metric, NConnectionField nconn, std::string kind)
    : metric_(std::move(metric)), nconn_(std::move(nconn)), kind_(std::move(kind)) {
  if (!(metric_.chart.context == nconn_.chart.context))
    fail(ErrorKind::dimension_mismatch, "metric and N live on different charts");
}

FieldJets RawBundle::evaluate(const PointU& u, int order) const {
  auto vars = seed_point(u, order);
  FieldJets out;
  out.metric = DMetricEval(metric_.chart, evaluate_fields(metric_.g, vars), evaluate_fields(metric_.h, vars));
  out.nconn = NConnectionEval(nconn_.chart, evaluate_fields(nconn_.entries, vars));
  return out;
}

NdArray<Jet> evaluate_fields(const NdArray<ScalarField>& fields, std::span<const Jet> vars) {
  NdArray<Jet> out(fields.shape());
  for (std::size_t i = 0; i < fields.size(); ++i) out.data()[i] = evaluate<Jet>(fields.data()[i], vars);
  return out;
}

NConnectionEval n_connection_eval(const NConnectionField& field, const PointU& u, int order) {
  auto vars = seed_point(u, order);
  return NConnectionEval(field.chart, evaluate_fields(field.entries, vars));
}

DMetricEval d_metric_eval(const DMetricField& field, const PointU& u, int order) {
  auto vars = seed_point(u, order);
  return DMetricEval(field.chart, evaluate_fields(field.g, vars), evaluate_fields(field.h, vars));
}

std::vector<double> adapted_derivative(const ScalarField& f, const NConnectionField& nconn, const PointU& u) {
  auto vars = seed_point(u, 1);
  NConnectionEval ne(nconn.chart, evaluate_fields(nconn.entries, vars));
  Jet fj = evaluate<Jet>(f, vars);
  std::vector<double> out;
  for (int i = 0; i < nconn.chart.n; ++i) out.push_back(ne.delta(fj, i).value());
  return out;
}

Matrix coordinate_metric(const DMetricEval& metric, const NConnectionEval& nconn) {
  const int n = nconn.n(), m = nconn.m();
  Matrix g = metric.g_values(), h = metric.h_values();
  Matrix G({n + m, n + m}, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = g(i, j);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) s += nconn.nv(a, i).value() * nconn.nv(b, j).value() * h(a, b);
      G(i, j) = s;
    }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) {
      double s = 0.0;
      for (int b = 0; b < m; ++b) s += nconn.nv(b, i).value() * h(b, a);
      G(i, n + a) = s;
      G(n + a, i) = s;
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) G(n + a, n + b) = h(a, b);
  return G;
}

NdArray<double> n_from_metric(const Matrix& G, const BundleChart& chart) {
  const int n = chart.n, m = chart.m;
  if (G.shape() != std::vector<int>{n + m, n + m}) fail(ErrorKind::dimension_mismatch, "block metric shape");
  Matrix h({m, m});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) h(a, b) = G(n + a, n + b);
  Matrix hi = inverse(h, ErrorKind::singular_fiber_metric);
  const double sign = chart.variance == Variance::vector ? 1.0 : -1.0;
  NdArray<double> N({m, n}, 0.0);
  for (int b = 0; b < m; ++b)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) s += hi(b, a) * G(i, n + a);
      N(b, i) = sign * s;
    }
  return N;
}

NdArray<Jet> n_curvature(const NConnectionEval& nc) {
  const int n = nc.n(), m = nc.m();
  const int k = nc.order() - 1;
  if (k < 0) fail(ErrorKind::order_exceeded, "N-curvature needs first derivatives of N");
  const Jet zero(nc.raw(0, 0).layout(), k, 0.0);
  NdArray<Jet> omega({m, n, n}, zero);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Jet s = nc.nv(a, i).derivative(j) - nc.nv(a, j).derivative(i);
        for (int b = 0; b < m; ++b) {
          s += nc.nv(b, i) * nc.nv(a, j).derivative(n + b);
          s -= nc.nv(b, j) * nc.nv(a, i).derivative(n + b);
        }
        omega(a, i, j) = s;
        omega(a, j, i) = -s;
      }
  return omega;
}

NdArray<Jet> anholonomy(const NConnectionEval& nc) {
  const int n = nc.n(), m = nc.m(), D = n + m;
  auto omega = n_curvature(nc);
  const Jet zero(nc.raw(0, 0).layout(), omega(0, 0, 0).order(), 0.0);
  NdArray<Jet> w({D, D, D}, zero);
  for (int e = 0; e < m; ++e) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(n + e, i, j) = omega(e, i, j);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < m; ++b) {
        Jet v = nc.nv(e, i).derivative(n + b);
        w(n + e, i, n + b) = v;
        w(n + e, n + b, i) = -v;
      }
  }
  return w;
}

}  // namespace anholkit
