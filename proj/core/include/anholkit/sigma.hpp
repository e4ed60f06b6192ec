#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anholkit/clifford.hpp"

namespace anholkit {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// standard: sigma_a sigma_b + sigma_b sigma_a = -2 G_ab I; paper: = -G_ab I.
enum class SigmaNormalization { standard, paper };

// Irreducible complex matrices for a signature; G = diag(+1 x p, -1 x q) is the frame metric.
struct SigmaRep {
  Signature signature;
  SigmaNormalization normalization = SigmaNormalization::standard;
  std::vector<CMatrix> sigma;
  int spinor_dim = 0;
  double kappa() const { return normalization == SigmaNormalization::standard ? -2.0 : -1.0; }
  double frame_metric(int a) const { return a < signature.p ? 1.0 : -1.0; }
  double anticommutator_residual() const;
};

int spinor_dimension(int n);  // 2^floor(n/2)
SigmaRep matrix_rep(Signature sig, SigmaNormalization norm = SigmaNormalization::standard);
// Image of a multivector; a homomorphism for the standard normalization.
CMatrix to_matrix(const Multivector& u, const SigmaRep& rep);

// Block-diagonal h (+) v sigma matrices of dimension N(n) + N(m).
struct DSigmaRep {
  SigmaRep h, v;
  int n() const { return h.signature.dim(); }
  int m() const { return v.signature.dim(); }
  int spinor_dim() const { return h.spinor_dim + v.spinor_dim; }
  CMatrix sigma(int alpha) const;  // alpha < n: h block, else v block
  double frame_metric(int alpha) const;
  double kappa() const { return h.kappa(); }
  // Spinor dimension of the block an index belongs to.
  int block_dim(int alpha) const { return alpha < n() ? h.spinor_dim : v.spinor_dim; }
};
DSigmaRep d_sigma(Signature h, Signature v, SigmaNormalization norm = SigmaNormalization::standard);

// E = sum_q (sign)^q w^q sum_{|A|=q} sigma_A (x) sigma^A, factored as scale * eps_low (x) eps_up.
struct EpsilonObjects {
  int n = 0;
  int sign = 1;
  CMatrix E;  // (N^2) x (N^2): row k*N+m, column i*N+j
  CMatrix eps_low, eps_up;
  cd scale;
  double residual = 0.0;   // max |E - scale eps_low (x) eps_up|
  double rank_gap = 0.0;   // second singular value / first
  bool vanishing = false;  // E is identically zero for this sign
  int symmetry = 0;        // +1 symmetric, -1 antisymmetric eps_up
};

EpsilonObjects epsilon_objects(const SigmaRep& rep, int sign);
// The nonvanishing choice for odd n; the + choice for even n.
EpsilonObjects default_epsilon(const SigmaRep& rep);

struct SymmetryEntry {
  int q = 0;
  int residue = 0;          // (n - 2q) mod 8
  int expected = 0;         // +1 symmetric, -1 antisymmetric
  int observed = 0;         // 0 when neither
  std::string chirality;    // "diag", "off" or "-" for odd n
  std::string expected_chirality;
  double residual = 0.0;
  bool pass = false;
};

// Symmetry class of (sigma_A)^{kl} (first index raised with eps_up) for all |A| = q.
SymmetryEntry sigma_symmetry_check(const SigmaRep& rep, const EpsilonObjects& eps, int q);

// w^{beta gamma} = sum_alpha w_alpha (sigma^alpha)^{beta gamma} and back.
CMatrix tensor_to_spinor(const std::vector<cd>& w, const DSigmaRep& rep, const CMatrix& eps_up);
std::vector<cd> spinor_to_tensor(const CMatrix& W, const DSigmaRep& rep, const CMatrix& eps_up);

// Metric from frame sigma matrices sigma_alpha(u) = l^a_alpha sigma_a, per block.
Matrix metric_reconstruction(const std::vector<CMatrix>& sigma_u, const DSigmaRep& rep, const EpsilonObjects& eps_h,
                             const EpsilonObjects& eps_v);

struct FundamentalReport {
  std::vector<double> bilinear;  // per q, max |xi^T lowered sigma_A xi|
  std::vector<bool> allowed;     // symmetric class
  std::vector<bool> window;
  bool fundamental = false;
};
FundamentalReport fundamental_spinor_check(const CVector& xi, const SigmaRep& rep, const EpsilonObjects& eps,
                                           double tol = 1e-10);

// Flat twistor residual for a spinor field u -> omega(u) on the total space.
using SpinorField = std::function<CVector(const std::vector<double>&)>;
double twistor_residual(const SpinorField& omega, const DSigmaRep& rep, const std::vector<double>& u,
                        double step = 1e-3);
SpinorField twistor_solution(const DSigmaRep& rep, const CVector& Omega, const CVector& Pi);

}  // namespace anholkit
