#pragma once

#include <cstdint>
#include <random>

#include "anholkit/expr.hpp"

namespace anholkit::verify {

struct RandomAstSpec {
  int max_depth = 4;
  // Allow abs, which is not smooth at zero; fine for round trips, not for derivative checks.
  bool allow_abs = false;
};

// Random expression over all chart variables. Every denominator, sqrt and log argument is
// bounded away from zero, so the result is smooth and finite everywhere.
ScalarField random_ast(const VarContext& context, std::mt19937_64& rng, const RandomAstSpec& spec = {});

}  // namespace anholkit::verify
