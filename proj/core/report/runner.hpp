#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace anholkit::report {

inline constexpr const char* kVersion = "0.1.0";

// Named component arrays at one point: g, h, N, L_h, ..., Ricci blocks, Einstein blocks, scalar.
using Blocks = std::vector<std::pair<std::string, NdArray<double>>>;
Blocks point_blocks(const GeometrySource& space, ConnectionKind kind, const PointU& u, const RicciConvention& conv);
// Component lookup by column name such as "g_1_2", "R_h_1_1_1_2" or "scalar" (indices 1-based).
double lookup_column(const Blocks& blocks, const std::string& column);
// Zero-filled blocks with the shapes of an (n, m) bundle, for validating column names up front.
Blocks shape_blocks(int n, int m);
// Throws ScenarioError for names that match no block of the given shape set.
void validate_column(const Blocks& blocks, const std::string& column);

struct PointResult {
  int index = 0;
  std::vector<double> coords;
  bool ok = true;
  std::string error;
  Blocks blocks;  // empty unless detail was requested
  std::vector<double> residuals;  // per check; NaN where the check could not be evaluated
};

struct CheckResult {
  CheckSpec spec;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  int evaluated = 0;
  int failed_points = 0;  // points where the check threw
  bool pass = true;
};

struct Report {
  std::string name;
  std::string hash;
  std::string space;
  int n = 0, m = 0;
  std::string connection;
  std::uint64_t seed = 1;
  bool sampled = false;
  SamplerStats sampler;
  std::vector<PointResult> points;
  std::vector<CheckResult> checks;
  bool pass = true;
  double elapsed_ms = 0.0;
  int jobs = 1;
};

struct RunOptions {
  int jobs = 1;
};

// FNV-1a over the compact dump of the scenario document.
std::string scenario_hash(const json& doc);

Report run_scenario(const Scenario& s, const RunOptions& opts = {});

// 0 when every check passed, 1 otherwise.
int exit_code(const Report& r);

// Runs f(i) for i in [0, count) over `jobs` threads; results must be keyed by i.
void parallel_for(int count, int jobs, const std::function<void(int)>& f);

}  // namespace anholkit::report
