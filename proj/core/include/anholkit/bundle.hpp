#pragma once

#include <string>
#include <vector>

#include "anholkit/expr.hpp"
#include "anholkit/jet.hpp"
#include "anholkit/linalg.hpp"
#include "anholkit/ndarray.hpp"

namespace anholkit {

struct BundleChart {
  BundleChart() = default;
  BundleChart(int n, int m, Variance variance) : n(n), m(m), variance(variance), context(n, m, variance) {}

  int n = 0;
  int m = 0;
  Variance variance = Variance::vector;
  VarContext context;

  int dim() const { return n + m; }
};

struct PointU {
  std::vector<double> x;
  std::vector<double> fiber;

  std::vector<double> coords() const;
  static PointU from_coords(const BundleChart& chart, std::span<const double> coords);
};

// N(a, i) holds N^a_i for vector bundles and N_ia (printed order) for covector bundles.
struct NConnectionField {
  NConnectionField() = default;
  NConnectionField(BundleChart chart, NdArray<ScalarField> entries);

  BundleChart chart;
  NdArray<ScalarField> entries;
};

// g: n x n base block; h: m x m fiber block (h_ab for vector bundles, h^ab for covector bundles).
struct DMetricField {
  DMetricField() = default;
  DMetricField(BundleChart chart, NdArray<ScalarField> g, NdArray<ScalarField> h);

  BundleChart chart;
  NdArray<ScalarField> g;
  NdArray<ScalarField> h;
};

// Jets of the nonlinear connection at one point. All geometry downstream works with the
// vector-form coefficient Nv = N (vector) or -N (covector), so that delta_i = d_i - Nv(a,i) d_a.
class NConnectionEval {
 public:
  NConnectionEval() = default;
  NConnectionEval(BundleChart chart, NdArray<Jet> raw);

  const BundleChart& chart() const { return chart_; }
  int n() const { return chart_.n; }
  int m() const { return chart_.m; }
  const Jet& raw(int a, int i) const { return raw_(a, i); }
  const Jet& nv(int a, int i) const { return nv_(a, i); }
  const NdArray<Jet>& raw() const { return raw_; }
  int order() const;

  double value(int a, int i) const { return raw_(a, i).value(); }
  double dx(int a, int i, int j) const;
  double dfiber(int a, int i, int b) const;

  // Adapted derivatives of a jet: delta_i (i < n) and d_a; d(f, mu) covers both.
  Jet delta(const Jet& f, int i) const;
  Jet dfib(const Jet& f, int a) const { return f.derivative(chart_.n + a); }
  Jet d(const Jet& f, int mu) const { return mu < chart_.n ? delta(f, mu) : dfib(f, mu - chart_.n); }

 private:
  BundleChart chart_;
  NdArray<Jet> raw_;
  NdArray<Jet> nv_;
};

class DMetricEval {
 public:
  DMetricEval() = default;
  DMetricEval(BundleChart chart, NdArray<Jet> g, NdArray<Jet> h);

  const BundleChart& chart() const { return chart_; }
  const NdArray<Jet>& g() const { return g_; }
  const NdArray<Jet>& h() const { return h_; }
  const NdArray<Jet>& g_inv() const { return g_inv_; }
  const NdArray<Jet>& h_inv() const { return h_inv_; }
  Matrix g_values() const { return values(g_); }
  Matrix h_values() const { return values(h_); }

 private:
  BundleChart chart_;
  NdArray<Jet> g_, h_, g_inv_, h_inv_;
};

struct FieldJets {
  DMetricEval metric;
  NConnectionEval nconn;
};

// Anything that produces g, h and N jets at a point.
class GeometrySource {
 public:
  virtual ~GeometrySource() = default;
  virtual const BundleChart& chart() const = 0;
  // Jet orders consumed before g, h and N are all available.
  virtual int depth() const = 0;
  virtual FieldJets evaluate(const PointU& u, int order) const = 0;
  virtual std::string kind() const = 0;
  // False inside excluded regions (e.g. near the null section).
  virtual bool admissible(const PointU&) const { return true; }
};

class RawBundle : public GeometrySource {
 public:
  RawBundle(DMetricField metric, NConnectionField nconn, std::string kind = "raw");

  const BundleChart& chart() const override { return metric_.chart; }
  int depth() const override { return 0; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return kind_; }

  const DMetricField& metric() const { return metric_; }
  const NConnectionField& nconn() const { return nconn_; }

 private:
  DMetricField metric_;
  NConnectionField nconn_;
  std::string kind_;
};

NdArray<Jet> evaluate_fields(const NdArray<ScalarField>& fields, std::span<const Jet> vars);

NConnectionEval n_connection_eval(const NConnectionField& field, const PointU& u, int order);
DMetricEval d_metric_eval(const DMetricField& field, const PointU& u, int order);

// delta_i f at u for i = 1..n.
std::vector<double> adapted_derivative(const ScalarField& f, const NConnectionField& nconn, const PointU& u);

// Coordinate-basis block metric G on the total space.
Matrix coordinate_metric(const DMetricEval& metric, const NConnectionEval& nconn);
// Recovers N from a block metric (same variance convention as the chart).
NdArray<double> n_from_metric(const Matrix& G, const BundleChart& chart);

// Omega(a, i, j), antisymmetric in (i, j) by construction.
NdArray<Jet> n_curvature(const NConnectionEval& nconn);

// w(c, a, b) with [delta_a, delta_b] = w^c_ab delta_c over the combined index range.
NdArray<Jet> anholonomy(const NConnectionEval& nconn);

}  // namespace anholkit
