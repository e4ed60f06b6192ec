#pragma once

#include <random>

#include "anholkit/sigma.hpp"

namespace anholkit::verify {

// Random vector with |Q(v)| > 0.2, hence invertible.
Multivector random_vector(const Signature& sig, std::mt19937_64& rng);
// Random vector rescaled to Q(v) = +-1.
Multivector unit_vector(const Signature& sig, std::mt19937_64& rng);
// Every blade coefficient uniform in [-1, 1].
Multivector random_multivector(const Signature& sig, std::mt19937_64& rng);

// Residuals of the algebra checks for one signature; `samples` random elements per check.
struct CliffordSuite {
  int spinor_dim = 0;
  double anticommutation = 0.0;       // |sigma_a sigma_b + sigma_b sigma_a + 2 G_ab|
  double homomorphism = 0.0;          // |rep(uv) - rep(u) rep(v)|
  double blade_orthonormality = 0.0;  // |tr(A^H B) / N - delta| over basis blade images (even blades for odd n)
  double spinor_norm = 0.0;           // |S(uu') - S(u) S(u')| on Clifford group words
  double orthogonality = 0.0;         // |rho^T Q rho - Q| on Spin elements
  double determinant = 0.0;           // |det rho - 1|
  double double_cover = 0.0;          // |rho(u) - rho(-u)|
  double max() const;
};

CliffordSuite clifford_suite(const Signature& sig, std::mt19937_64& rng, int samples = 3);

}  // namespace anholkit::verify
