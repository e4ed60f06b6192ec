#include "anholkit/fd_oracle.hpp"

#include <cmath>
#include <vector>

namespace anholkit {

double FDSpec::step(int k) const { return h * std::pow(10.0, (k - 1) / 2.0); }

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;  // before division by h^order
};

Stencil central(int order) {
  switch (order) {
    case 1: return {{-1, 1}, {-0.5, 0.5}};
    case 2: return {{-1, 0, 1}, {1.0, -2.0, 1.0}};
    case 3: return {{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    default: fail(ErrorKind::order_exceeded, "FD oracle supports per-variable order <= 3");
  }
}

double apply(const PlainFunction& f, std::vector<double>& x, std::span<const int> alpha, std::size_t var,
             double h) {
  while (var < alpha.size() && alpha[var] == 0) ++var;
  if (var == alpha.size()) return f(x);
  Stencil s = central(alpha[var]);
  const double x0 = x[var];
  double acc = 0.0;
  for (std::size_t i = 0; i < s.offsets.size(); ++i) {
    x[var] = x0 + s.offsets[i] * h;
    acc += s.weights[i] * apply(f, x, alpha, var + 1, h);
  }
  x[var] = x0;
  return acc / std::pow(h, alpha[var]);
}

}  // namespace

double fd_oracle(const PlainFunction& f, std::span<const double> point, std::span<const int> alpha,
                 const FDSpec& spec) {
  if (alpha.size() != point.size()) fail(ErrorKind::dimension_mismatch, "multi-index length");
  int k = 0;
  for (int a : alpha) k += a;
  if (k > spec.max_order) fail(ErrorKind::order_exceeded, "FD oracle order cap exceeded");
  std::vector<double> x(point.begin(), point.end());
  if (k == 0) return f(x);
  const double h = spec.step(k);
  // Richardson table over h, h/2, h/4, ...; central stencils have even error expansions.
  std::vector<double> prev, row;
  for (int level = 0; level <= spec.richardson_levels; ++level) {
    row.assign(1, apply(f, x, alpha, 0, h / std::pow(2.0, level)));
    double factor = 4.0;
    for (int k = 1; k <= level; ++k, factor *= 4.0)
      row.push_back(row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - 1.0));
    prev = row;
  }
  return prev.back();
}

double fd_oracle(const ScalarField& f, std::span<const double> point, std::span<const int> alpha,
                 const FDSpec& spec) {
  PlainFunction g = [&f](std::span<const double> x) { return evaluate<double>(f, x); };
  return fd_oracle(g, point, alpha, spec);
}

}  // namespace anholkit
