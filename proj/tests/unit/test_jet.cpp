#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "anholkit/expr.hpp"
#include "anholkit/jet.hpp"
#include "oracles.hpp"
#include "random_ast.hpp"

using namespace anholkit;

TEST_CASE("layout counts monomials") {
  const auto& L = JetLayout::get(3, 4);
  CHECK(L.count(0) == 1);
  CHECK(L.count(1) == 4);
  CHECK(L.count(2) == 10);
  CHECK(L.count(4) == 35);
  const int alpha[3] = {1, 0, 2};
  CHECK(L.degree(L.rank(alpha)) == 3);
}

TEST_CASE("products and functions match closed-form partials") {
  const auto& L = JetLayout::get(2, 5);
  const double x0 = 0.3, y0 = -0.7;
  Jet x = Jet::variable(L, 5, 0, x0), y = Jet::variable(L, 5, 1, y0);
  Jet f = sin(x) * exp(y);
  CHECK(f.value() == doctest::Approx(std::sin(x0) * std::exp(y0)));
  CHECK(extract_partial(f, {1, 0}) == doctest::Approx(std::cos(x0) * std::exp(y0)));
  CHECK(extract_partial(f, {3, 2}) == doctest::Approx(-std::cos(x0) * std::exp(y0)));
  CHECK(extract_partial(f, {4, 1}) == doctest::Approx(std::sin(x0) * std::exp(y0)));

  Jet g = pow(x * x + 1.0, 1.5);
  const double s = x0 * x0 + 1.0;
  CHECK(extract_partial(g, {1, 0}) == doctest::Approx(3.0 * x0 * std::sqrt(s)));
  CHECK(extract_partial(g, {2, 0}) == doctest::Approx(3.0 * std::sqrt(s) + 3.0 * x0 * x0 / std::sqrt(s)));
}

TEST_CASE("inverse functions undo each other to rounding") {
  const auto& L = JetLayout::get(2, 6);
  Jet x = Jet::variable(L, 6, 0, 0.4), y = Jet::variable(L, 6, 1, 1.3);
  Jet f = x * y + 2.0;
  Jet back = exp(log(f));
  Jet root = sqrt(f) * sqrt(f);
  Jet recip = f * reciprocal(f);
  for (std::size_t r = 0; r < f.coeffs().size(); ++r) {
    CHECK(back.coeff(r) == doctest::Approx(f.coeff(r)).epsilon(1e-13));
    CHECK(root.coeff(r) == doctest::Approx(f.coeff(r)).epsilon(1e-13));
    CHECK(recip.coeff(r) == doctest::Approx(r == 0 ? 1.0 : 0.0).epsilon(1e-13));
  }
}

TEST_CASE("binary operations truncate to the lower order") {
  const auto& L = JetLayout::get(1, 6);
  Jet a = Jet::variable(L, 6, 0, 0.5), b = Jet::variable(L, 3, 0, 0.5);
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
  CHECK(a.derivative(0).order() == 5);
  CHECK(a.truncated(2).order() == 2);
}

TEST_CASE("jet evaluation agrees with hyper-dual partials on random expressions") {
  VarContext ctx(2, 2, Variance::vector);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const auto& L = JetLayout::get(4, 2);
  for (int t = 0; t < 60; ++t) {
    ScalarField f = verify::random_ast(ctx, rng);
    std::vector<double> p{d(rng), d(rng), d(rng), d(rng)};
    std::vector<Jet> vars;
    for (int v = 0; v < 4; ++v) vars.push_back(Jet::variable(L, 2, v, p[static_cast<std::size_t>(v)]));
    Jet j = evaluate<Jet>(f, std::span<const Jet>(vars));
    const int i = t % 4, k = (t / 4) % 4;
    auto hd = verify::hyper_dual_partials(f, p, i, k);
    std::vector<int> a(4, 0), b(4, 0), ab(4, 0);
    a[static_cast<std::size_t>(i)] = 1;
    b[static_cast<std::size_t>(k)] = 1;
    ab[static_cast<std::size_t>(i)] += 1;
    ab[static_cast<std::size_t>(k)] += 1;
    const double scale = 1.0 + std::abs(hd.dij);
    CHECK(j.value() == doctest::Approx(hd.value).epsilon(1e-12));
    CHECK(std::abs(extract_partial(j, a) - hd.di) <= 1e-10 * (1.0 + std::abs(hd.di)));
    CHECK(std::abs(extract_partial(j, b) - hd.dj) <= 1e-10 * (1.0 + std::abs(hd.dj)));
    CHECK(std::abs(extract_partial(j, ab) - hd.dij) <= 1e-10 * scale);
  }
}
