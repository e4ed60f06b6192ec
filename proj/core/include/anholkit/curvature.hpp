#pragma once

#include "anholkit/connections.hpp"

namespace anholkit {

// T_h(i,j,k) = T^i_jk, T_hv(i,j,a) = T^i_ja, T_v(a,i,j) = T^a_ij = Omega^a_ij,
// P(a,b,i) = P^a_bi, S(a,b,c) = S^a_bc.
struct TorsionComponents {
  NdArray<double> T_h, T_hv, T_v, P, S;
  double max_abs() const;
};

// Index order follows the printed symbols, upper index first:
// R_h(i,h,j,k) = R_h.jk^i, R_v(a,b,j,k) = R_b.jk^a, P_h(i,j,k,a) = P_j.ka^i,
// P_v(c,b,k,a) = P_b.ka^c, S_h(i,j,b,c) = S_j.bc^i, S_v(a,b,c,d) = S_b.cd^a.
struct CurvatureComponents {
  NdArray<double> R_h, R_v, P_h, P_v, S_h, S_v;
  double max_abs() const;
};

struct RicciComponents {
  NdArray<double> R_hh;  // R_ij
  NdArray<double> R_hv;  // R_ia
  NdArray<double> R_vh;  // R_ai
  NdArray<double> R_vv;  // S_ab
  double scalar = 0.0;
  double max_abs() const;
};

struct EinsteinComponents {
  NdArray<double> G_hh, G_hv, G_vh, G_vv;
  double max_abs() const;
};

// Sign applied to the mixed Ricci blocks R_ia and R_ai.
struct RicciConvention {
  double mixed_hv = -1.0;
  double mixed_vh = 1.0;
};

TorsionComponents d_torsions(const DConnectionCoeffs& conn, const NConnectionEval& nconn);
CurvatureComponents d_curvatures(const DConnectionCoeffs& conn, const NConnectionEval& nconn);
RicciComponents ricci(const CurvatureComponents& R, const DMetricEval& metric, const RicciConvention& conv = {});
EinsteinComponents einstein(const RicciComponents& ric, const DMetricEval& metric);

// Curvature of the assembled connection in the adapted frame:
// R(a, b, mu, nu) = e^a R(e_mu, e_nu) e_b, including the anholonomy term.
NdArray<double> frame_curvature(const DConnectionCoeffs& conn, const NConnectionEval& nconn);
// Full torsion T(l, mu, nu) = Gamma^l_nu.mu - Gamma^l_mu.nu - w^l_mu.nu.
NdArray<double> frame_torsion(const DConnectionCoeffs& conn, const NConnectionEval& nconn);


}  // namespace anholkit
