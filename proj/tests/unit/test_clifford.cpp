#include <doctest.h>

#include <cmath>
#include <random>

#include "anholkit/sigma.hpp"
#include "clifford_suite.hpp"

using namespace anholkit;

TEST_CASE("generator squares and anticommutation") {
  const Signature sig{1, 2};
  auto e1 = Multivector::generator(sig, 0), e2 = Multivector::generator(sig, 1), e3 = Multivector::generator(sig, 2);
  CHECK((e1 * e1).scalar_part() == -1.0);
  CHECK((e2 * e2).scalar_part() == 1.0);
  CHECK(((e2 * e3) + (e3 * e2)).norm() == 0.0);
  CHECK(blade_sign(0b10, 0b01, sig) == -1.0);
  CHECK(grade(0b101) == 2);
}

TEST_CASE("involutions") {
  const Signature sig{3, 0};
  std::mt19937_64 rng(1);
  auto u = verify::random_multivector(sig, rng), v = verify::random_multivector(sig, rng);
  CHECK((reversion(u * v) - reversion(v) * reversion(u)).norm() < 1e-14);
  CHECK((grade_involution(u * v) - grade_involution(u) * grade_involution(v)).norm() < 1e-14);
  CHECK((conjugate(conjugate(u)) - u).norm() < 1e-15);
}

TEST_CASE("inverses of versors") {
  std::mt19937_64 rng(2);
  for (const Signature sig : {Signature{2, 1}, Signature{0, 3}, Signature{4, 0}}) {
    auto u = verify::random_vector(sig, rng) * verify::random_vector(sig, rng) * verify::random_vector(sig, rng);
    auto one = u * inverse(u);
    CHECK(std::abs(one.scalar_part() - 1.0) < 1e-12);
    CHECK(one.off_grade(0) < 1e-12);
  }
  // A null vector has no inverse.
  const Signature lor{1, 1};
  auto null = Multivector::vector(lor, {1.0, 1.0});
  CHECK_THROWS_AS(inverse(null), Error);
}

TEST_CASE("twisted action of vectors is a reflection") {
  const Signature sig{3, 0};
  auto v = Multivector::vector(sig, {1.0, 0.0, 0.0});
  auto r = twisted_group_check(v);
  CHECK(r.member);
  CHECK(r.orthogonal);
  CHECK(r.det == doctest::Approx(-1.0));
  auto mixed = Multivector::scalar(sig, 1.0) + Multivector::generator(sig, 0);
  CHECK_FALSE(twisted_group_check(mixed).member);
}

TEST_CASE("irreducible dimensions") {
  const int expect[8] = {1, 2, 2, 4, 4, 8, 8, 16};
  for (int n = 1; n <= 8; ++n) CHECK(spinor_dimension(n) == expect[n - 1]);
  CHECK_THROWS_AS(matrix_rep(Signature{8, 5}), Error);
  CHECK_THROWS_AS(matrix_rep(Signature{0, 0}), Error);
}

TEST_CASE("matrix representations satisfy the algebra") {
  auto rep = matrix_rep(Signature{2, 0});
  REQUIRE(rep.sigma.size() == 2);
  CHECK(rep.sigma[0].rows() == 2);
  CHECK(rep.anticommutator_residual() == 0.0);
  // sigma_a sigma_a = -G_aa in the standard normalization.
  CHECK((rep.sigma[0] * rep.sigma[0] + CMatrix::Identity(2, 2)).norm() < 1e-15);
  auto paper = matrix_rep(Signature{2, 1}, SigmaNormalization::paper);
  CHECK(paper.anticommutator_residual() < 1e-15);
  CHECK((paper.sigma[0] * paper.sigma[0] + 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("algebra suites over every small signature") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 6; ++n)
    for (int p = 0; p <= n; ++p) {
      CAPTURE(p);
      CAPTURE(n - p);
      auto s = verify::clifford_suite(Signature{p, n - p}, rng, 4);
      CHECK(s.anticommutation < 1e-12);
      CHECK(s.homomorphism < 1e-10);
      CHECK(s.blade_orthonormality < 1e-10);
      CHECK(s.spinor_norm < 1e-9);
      CHECK(s.orthogonality < 1e-9);
      CHECK(s.determinant < 1e-9);
      CHECK(s.double_cover == 0.0);
    }
}

TEST_CASE("d-sigma matrices are block diagonal") {
  auto d = d_sigma(Signature{2, 0}, Signature{3, 0});
  CHECK(d.spinor_dim() == 4);
  for (int al = 0; al < 5; ++al) {
    CMatrix s = d.sigma(al);
    CHECK(s.topRightCorner(2, 2).norm() == 0.0);
    CHECK(s.bottomLeftCorner(2, 2).norm() == 0.0);
  }
  CHECK(d.block_dim(1) == 2);
  CHECK(d.block_dim(4) == 2);
}

TEST_CASE("epsilon objects and symmetry classes") {
  for (int n = 1; n <= 8; ++n) {
    auto rep = matrix_rep(Signature{n, 0});
    auto e = default_epsilon(rep);
    CAPTURE(n);
    CHECK_FALSE(e.vanishing);
    CHECK(e.residual < 1e-12);
    CHECK(e.rank_gap < 1e-12);
    for (int q = 0; q <= std::min(n, 3); ++q) CHECK(sigma_symmetry_check(rep, e, q).pass);
  }
  // For odd n exactly one sign survives.
  auto rep3 = matrix_rep(Signature{3, 0});
  CHECK(epsilon_objects(rep3, 1).vanishing != epsilon_objects(rep3, -1).vanishing);
}

TEST_CASE("vector to spinor conversion round trips") {
  auto d = d_sigma(Signature{2, 0}, Signature{2, 0});
  auto e = default_epsilon(d.h);
  CMatrix up = CMatrix::Zero(4, 4);
  up.topLeftCorner(2, 2) = e.eps_up;
  up.bottomRightCorner(2, 2) = default_epsilon(d.v).eps_up;
  std::vector<cd> w{0.3, -1.2, cd(0.5, 0.1), 2.0};
  auto back = spinor_to_tensor(tensor_to_spinor(w, d, up), d, up);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(back[i] - w[i]) < 1e-13);
}
