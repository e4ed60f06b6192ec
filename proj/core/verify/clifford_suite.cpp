#include "clifford_suite.hpp"

#include <algorithm>
#include <cmath>

namespace anholkit::verify {

Multivector random_vector(const Signature& sig, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (;;) {
    std::vector<double> v(static_cast<std::size_t>(sig.dim()));
    for (auto& c : v) c = d(rng);
    double q = 0.0;
    for (int a = 0; a < sig.dim(); ++a) q += sig.square(a) * v[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(a)];
    if (std::abs(q) > 0.2) return Multivector::vector(sig, v);
  }
}

Multivector unit_vector(const Signature& sig, std::mt19937_64& rng) {
  Multivector v = random_vector(sig, rng);
  return v * (1.0 / std::sqrt(std::abs((v * v).scalar_part())));
}

Multivector random_multivector(const Signature& sig, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Multivector u(sig);
  for (Blade b = 0; b < (Blade{1} << sig.dim()); ++b) u.set(b, d(rng));
  return u;
}

double CliffordSuite::max() const {
  return std::max({anticommutation, homomorphism, blade_orthonormality, spinor_norm, orthogonality, determinant,
                   double_cover});
}

namespace {

double cmax(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

CliffordSuite clifford_suite(const Signature& sig, std::mt19937_64& rng, int samples) {
  CliffordSuite s;
  const SigmaRep rep = matrix_rep(sig);
  const int n = sig.dim();
  s.spinor_dim = rep.spinor_dim;
  s.anticommutation = rep.anticommutator_residual();

  for (int t = 0; t < samples; ++t) {
    auto u = random_multivector(sig, rng), v = random_multivector(sig, rng);
    s.homomorphism = std::max(s.homomorphism, cmax(to_matrix(u * v, rep) - to_matrix(u, rep) * to_matrix(v, rep)));
  }

  // For odd n the pseudoscalar is central and maps to a multiple of the identity, so only
  // the even subalgebra can be represented injectively.
  std::vector<CMatrix> images;
  for (Blade b = 0; b < (Blade{1} << n); ++b) {
    if (n % 2 == 1 && grade(b) % 2 == 1) continue;
    Multivector e(sig);
    e.set(b, 1.0);
    images.push_back(to_matrix(e, rep));
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i; j < images.size(); ++j) {
      const cd g = images[i].conjugate().cwiseProduct(images[j]).sum() / static_cast<double>(rep.spinor_dim);
      s.blade_orthonormality = std::max(s.blade_orthonormality, std::abs(g - (i == j ? 1.0 : 0.0)));
    }

  auto word = [&](int len) {
    Multivector u = random_vector(sig, rng);
    for (int k = 1; k < len; ++k) u = u * random_vector(sig, rng);
    return u;
  };
  for (int t = 0; t < samples; ++t) {
    auto u = word(1 + t % 3), v = word(1 + (t + 1) % 3);
    s.spinor_norm = std::max(s.spinor_norm, (spinor_norm(u * v) - spinor_norm(u) * spinor_norm(v)).norm());
  }

  if (n >= 2) {
    for (int t = 0; t < samples; ++t) {
      Multivector u = Multivector::scalar(sig, 1.0);
      for (int k = 0; k < 2 * (1 + t % 2); ++k) u = u * unit_vector(sig, rng);
      const auto a = twisted_group_check(u), b = twisted_group_check(u * -1.0);
      s.orthogonality = std::max(s.orthogonality, a.orthogonality_residual);
      s.determinant = std::max(s.determinant, std::abs(a.det - 1.0));
      for (std::size_t i = 0; i < a.rho.size(); ++i)
        s.double_cover = std::max(s.double_cover, std::abs(a.rho.data()[i] - b.rho.data()[i]));
    }
  }
  return s;
}

}  // namespace anholkit::verify
