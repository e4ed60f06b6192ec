#pragma once

#include <functional>
#include <span>

#include "anholkit/expr.hpp"

namespace anholkit {

// Nested central differences, used only as an independent check on jets.
struct FDSpec {
  double h = 1e-3;
  int max_order = 3;
  // Halvings combined by Richardson extrapolation; each removes one even power of h.
  int richardson_levels = 2;
  // Step used for a partial of total order k.
  double step(int k) const;
};

using PlainFunction = std::function<double(std::span<const double>)>;

double fd_oracle(const PlainFunction& f, std::span<const double> point, std::span<const int> alpha,
                 const FDSpec& spec = {});
double fd_oracle(const ScalarField& f, std::span<const double> point, std::span<const int> alpha,
                 const FDSpec& spec = {});

}  // namespace anholkit
