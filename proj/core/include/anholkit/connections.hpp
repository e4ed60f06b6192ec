#pragma once

#include <string>
#include <vector>

#include "anholkit/bundle.hpp"

namespace anholkit {

enum class ConnectionKind { berwald, canonical, christoffel, kahler, hamilton_canonical };

const char* to_string(ConnectionKind k);
ConnectionKind connection_kind_from_string(const std::string& s);

// Coefficient blocks of a distinguished connection in the adapted frame:
// L_h(i,j,k) = L^i_jk, L_v(a,b,k) = L^a_bk, C_h(i,j,c) = C^i_jc, C_v(a,b,c) = C^a_bc.
// For covector bundles every block is in the mapped vector form (see README).
struct DConnectionCoeffs {
  int n = 0;
  int m = 0;
  Variance variance = Variance::vector;
  NdArray<Jet> L_h, L_v, C_h, C_v;

  int order() const;
  // Full adapted-frame coefficients Gamma(alpha, beta, mu) = coefficient of D_mu e_beta along e_alpha.
  NdArray<Jet> assemble() const;
};

NdArray<Jet> lccoef_h(const DMetricEval& metric, const NConnectionEval& nconn);
NdArray<Jet> lccoef_v(const DMetricEval& metric, const NConnectionEval& nconn);

DConnectionCoeffs berwald_connection(const FieldJets& f);
DConnectionCoeffs canonical_connection(const FieldJets& f);
DConnectionCoeffs christoffel_connection(const FieldJets& f);
// Needs n = m; (L, L, C, C) built from the Levi-Civita-type blocks.
DConnectionCoeffs kahler_connection(const FieldJets& f);
// Covector form: blocks from the base metric g_ij (inverse of the fiber Hessian).
DConnectionCoeffs hamilton_canonical_connection(const FieldJets& f);

DConnectionCoeffs build_connection(ConnectionKind kind, const FieldJets& f);

enum class Slot { h_upper, h_lower, v_upper, v_lower };

struct DTensor {
  std::vector<Slot> valence;
  NdArray<Jet> comps;
};

// D_mu t for mu < n (horizontal index k) or mu = n + c (vertical index c).
DTensor d_covariant_derivative(const DTensor& t, const DConnectionCoeffs& conn, const NConnectionEval& nconn,
                               int mu);

struct MetricityReport {
  double hh = 0.0;  // max |D_k g_ij|
  double hv = 0.0;  // max |D_k h_ab|
  double vh = 0.0;  // max |D_c g_ij|
  double vv = 0.0;  // max |D_c h_ab|
  double max() const;
};

MetricityReport metricity_residual(const DConnectionCoeffs& conn, const FieldJets& f);

}  // namespace anholkit
