#pragma once

#include <string>

#include "commands.hpp"

namespace anholkit::cli {

struct CliffordArgs {
  int p = 2, q = 0;
  int vp = -1, vq = -1;  // d-sigma blocks when either is set
  std::string normalization = "standard";
  double tolerance_scale = 1.0;
  std::uint64_t seed = 1;
  double angle = 0.5;
  int plane_a = 1, plane_b = 2;  // 1-based generators of the rotation plane
};

report::CommandOutput clifford_rep(const CliffordArgs& a);
report::CommandOutput clifford_check(const CliffordArgs& a);
report::CommandOutput clifford_epsilon(const CliffordArgs& a);
report::CommandOutput clifford_spin_demo(const CliffordArgs& a);

}  // namespace anholkit::cli
