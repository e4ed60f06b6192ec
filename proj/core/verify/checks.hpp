#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "anholkit/spaces.hpp"

namespace anholkit::verify {

// Largest component of every torsion, curvature block, Omega, Ricci block, scalar and Einstein block.
double flat_zero_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                          const RicciConvention& conv = {});

// Tangent-bundle space against the Levi-Civita geometry of a base metric g_ij(x).
struct RiemannReduction {
  double n_connection = 0.0;  // |N^i_j - gamma^i_jk y^k|
  double christoffel = 0.0;   // |L^i_jk - gamma^i_jk|, canonical connection
  double riemann = 0.0;       // |R_h - classical Riemann|
  double scalar = 0.0;        // scalar curvature of the d-connection
  double max() const;
};
RiemannReduction riemann_reduction(const GeometrySource& space, const NdArray<ScalarField>& base_metric,
                                   const PointU& u);

// [delta_i, delta_j] f - Omega^a_ij d_a f over random cubic polynomials f.
double anholonomy_residual(const GeometrySource& space, const PointU& u, std::uint64_t seed, int functions = 10);

// max |jet - fd| / (1 + |fd|) over all partials of total order 1..max_order.
double ad_fd_residual(const ScalarField& f, std::span<const double> point, int max_order = 3);

// Same measure for every entry of the Finsler fundamental tensor against an independent g(u).
using MetricOracle = std::function<Matrix(std::span<const double>)>;
double metric_ad_fd_residual(const FinslerSpace& space, const PointU& u, const MetricOracle& oracle,
                             int max_order = 3);

// Every multi-index in `nvars` variables with total order 1..max_order.
std::vector<std::vector<int>> multi_indices(int nvars, int max_order);

}  // namespace anholkit::verify
