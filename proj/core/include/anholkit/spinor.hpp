#pragma once

#include <cstdint>
#include <vector>

#include "anholkit/curvature.hpp"
#include "anholkit/sigma.hpp"

namespace anholkit {

// Orthonormal adapted frame of the block metric diag(g, h): coframe l^a_alpha and frame E^alpha_a,
// with l^T l = G and E = l^-1. Built blockwise by Cholesky, so it is generally not constant.
struct SpinorFrame {
  JetMatrix l, E;
  // max |E^T G E - I| at the point.
  double orthonormality = 0.0;
};

SpinorFrame orthonormal_frame(const DMetricEval& metric);

// gamma_mu = 1/(2 kappa) omega^a_b.mu sigma_a sigma^b, with omega the connection in the orthonormal frame.
struct SpinorConnection {
  int D = 0;
  // omega(a, b, mu) = l^a_alpha (delta_mu E^alpha_b + Gamma^alpha_beta.mu E^beta_b)
  NdArray<Jet> omega;
  std::vector<CMatrix> gamma;  // values at the point, one per adapted direction
  // Constant generator matrices M(a, b) = 1/(2 kappa) sigma_a sigma^b (trace removed per block).
  std::vector<CMatrix> generators;
  CMatrix generator(int a, int b) const { return generators[static_cast<std::size_t>(a * D + b)]; }
};

SpinorConnection spinor_connection(const DConnectionCoeffs& conn, const FieldJets& f, const SpinorFrame& frame,
                                   const DSigmaRep& rep);

struct SpinorCurvature {
  int D = 0;
  std::vector<CMatrix> X;   // X(mu, nu) at index mu * D + nu, adapted directions
  NdArray<double> R_frame;  // R^a_b.cd recovered from X by trace, all indices in the orthonormal frame
  NdArray<double> ricci;    // Ric_bd = R^a_b.ad
  double scalar = 0.0;
  NdArray<double> einstein;  // Ric - 1/2 eta R
  NdArray<double> phi;       // R eta / (2 D) - 1/2 Ric
  NdArray<cd> Psi;           // gravitational spinor, symmetric in slots 0, 2, 3
  NdArray<cd> X4;            // X with the 2-form pair in spinor indices: X4(alpha, beta, gamma, delta)
};

SpinorCurvature spinor_curvature(const SpinorConnection& sc, const DConnectionCoeffs& conn, const FieldJets& f,
                                 const SpinorFrame& frame, const DSigmaRep& rep, const EpsilonObjects& eps_h,
                                 const EpsilonObjects& eps_v);

// Everything the cross-checks need at one point.
struct SpinorCrossCheck {
  double spinor_scalar = 0.0;
  double tensor_scalar = 0.0;
  double scalar_diff = 0.0;
  double curvature_diff = 0.0;  // max |R_frame - l R E E E| against the tensor frame curvature
  double psi_symmetry = 0.0;    // max deviation of Psi from symmetry in its symmetrized slots
  double frame_orthonormality = 0.0;
};

// Positive-definite block metrics only (frame metric +1 everywhere).
SpinorCrossCheck spinor_tensor_cross_check(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                           SigmaNormalization norm = SigmaNormalization::standard);

// Spinor covariant derivative of sigma(l v) against sigma(l D v) for a random vector field v.
double leibniz_transfer_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                 std::uint64_t seed, SigmaNormalization norm = SigmaNormalization::standard);

// max |[D_mu, D_nu] f + T^l_mu.nu delta_l f| for a random quadratic scalar f.
double torsion_commutator_residual(const GeometrySource& space, ConnectionKind kind, const PointU& u,
                                   std::uint64_t seed);

// d-sigma representation matching a positive-definite n + m block metric.
DSigmaRep euclidean_d_sigma(int n, int m, SigmaNormalization norm = SigmaNormalization::standard);

}  // namespace anholkit
