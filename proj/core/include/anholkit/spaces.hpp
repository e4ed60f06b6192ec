#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "anholkit/connections.hpp"
#include "anholkit/curvature.hpp"

namespace anholkit {

inline constexpr double kDefaultNullMargin = 0.1;

enum class HessianMode { of_L, of_L_squared };

// F(x, y) on TM; g = 1/2 d^2 F^2 / dy dy, h = g, N = Cartan nonlinear connection.
class FinslerSpace : public GeometrySource {
 public:
  FinslerSpace(ScalarField F, double null_margin = kDefaultNullMargin);

  const BundleChart& chart() const override { return chart_; }
  int depth() const override { return 4; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return "finsler"; }
  bool admissible(const PointU& u) const override;

  const ScalarField& F() const { return F_; }
  // g_ij as jets of order (order - 2).
  NdArray<Jet> metric_jets(std::span<const Jet> vars) const;

 private:
  BundleChart chart_;
  ScalarField F_;
  double margin_;
};

// L(x, y) on TM; canonical nonlinear connection of the Lagrangian.
class LagrangeSpace : public GeometrySource {
 public:
  LagrangeSpace(ScalarField L, HessianMode mode = HessianMode::of_L, double null_margin = 0.0);

  const BundleChart& chart() const override { return chart_; }
  int depth() const override { return 3; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return "lagrange"; }
  bool admissible(const PointU& u) const override;

 private:
  BundleChart chart_;
  ScalarField L_;
  HessianMode mode_;
  double margin_;
};

// K(x, p) on T*M; g^ij = 1/2 d^2 K^2 / dp dp, Cartan nonlinear connection N_ij.
class CartanSpace : public GeometrySource {
 public:
  CartanSpace(ScalarField K, double null_margin = kDefaultNullMargin);

  const BundleChart& chart() const override { return chart_; }
  int depth() const override { return 3; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return "cartan"; }
  bool admissible(const PointU& u) const override;

 private:
  BundleChart chart_;
  ScalarField K_;
  double margin_;
};

// H(x, p) on T*M; g^ij = 1/2 d^2 H / dp dp and the canonical N_ij of the Hamiltonian.
class HamiltonSpace : public GeometrySource {
 public:
  HamiltonSpace(ScalarField H, double null_margin = 0.0);

  const BundleChart& chart() const override { return chart_; }
  int depth() const override { return 3; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return "hamilton"; }
  bool admissible(const PointU& u) const override;

 private:
  BundleChart chart_;
  ScalarField H_;
  double margin_;
};

// g_ij(x, y) and N on TM with h = g.
std::unique_ptr<RawBundle> generalized_lagrange(const BundleChart& chart, NdArray<ScalarField> g,
                                                NdArray<ScalarField> N);
// g^ij(x, p) and N_ij on T*M; the base block is the inverse of g^ij.
class GeneralizedHamilton : public GeometrySource {
 public:
  GeneralizedHamilton(BundleChart chart, NdArray<ScalarField> g_upper, NdArray<ScalarField> N);

  const BundleChart& chart() const override { return chart_; }
  int depth() const override { return 0; }
  FieldJets evaluate(const PointU& u, int order) const override;
  std::string kind() const override { return "generalized_hamilton"; }

 private:
  BundleChart chart_;
  NdArray<ScalarField> g_upper_;
  NdArray<ScalarField> N_;
};

// Jet order needed at the seed so that the requested stage still has order >= 0.
enum class Stage { fields, connection, curvature, connection_partials };
int required_order(const GeometrySource& space, Stage stage);

struct SamplerSpec {
  std::uint64_t seed = 1;
  int count = 10;
  std::vector<std::pair<double, double>> box;  // one interval per coordinate
  double null_margin = kDefaultNullMargin;
  bool require_positive_definite = true;
};
struct SamplerStats {
  long attempts = 0;
  long rejected_margin = 0;
  long rejected_metric = 0;  // not positive definite, or the fields failed to evaluate
};
std::vector<PointU> sample_points(const GeometrySource& space, const SamplerSpec& spec, SamplerStats* stats = nullptr);

struct HomogeneityReport {
  double f_homogeneity = 0.0;       // |F(x, l y) - l F(x, y)|
  double g_homogeneity = 0.0;       // |g(x, l y) - g(x, y)|
  double euler = 0.0;               // |g_ij y^i y^j - F^2|
  double cartan_contraction = 0.0;  // |d g_ij / dy^k y^k|
  double max() const;
};
HomogeneityReport homogeneity_report(const FinslerSpace& space, const std::vector<PointU>& points,
                                     const std::vector<double>& lambdas = {0.5, 2.0, 3.0});

// Throws NonPositiveDefinite naming the failing points.
void check_positive_definite(const GeometrySource& space, const std::vector<PointU>& points);

struct AlmostStructureReport {
  double j_squared = 0.0;       // |J^2 + I|
  double metric_compat = 0.0;   // |J^T G J - G|
  double dj = 0.0;              // |D J| under the Kahler-type connection
  double dtheta = 0.0;          // |d theta|, theta = g_ij delta y^i ^ dx^j
  double max() const;
};
AlmostStructureReport almost_structure_checks(const GeometrySource& space, const PointU& u, double step = 1e-3);

// Fiber transformation y' = K(x) y with base map x' = phi(x).
struct CoordinateTransform {
  std::vector<ScalarField> base_map;  // phi_i(x), empty for the identity
  NdArray<ScalarField> K;             // m x m, expressions in x
};
struct TransformReport {
  double f_invariance = 0.0;       // |F(x', y') - F(x, y)|
  double metric_covariance = 0.0;  // |g'(x', y') - K^-T g K^-1|
};
TransformReport coordinate_transform_check(const FinslerSpace& space, const CoordinateTransform& t,
                                           const std::vector<PointU>& points);
// Generalized Lagrange fields: transformed components built by substitution vs numeric pullback.
TransformReport coordinate_transform_check(const BundleChart& chart, const NdArray<ScalarField>& g,
                                           const Matrix& K, const std::vector<PointU>& points);

}  // namespace anholkit
