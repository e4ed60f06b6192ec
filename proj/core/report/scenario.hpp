#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anholkit/sigma.hpp"
#include "anholkit/spaces.hpp"

namespace anholkit::report {

using json = nlohmann::json;

// Validation failure tied to a location in the scenario document.
class ScenarioError : public Error {
 public:
  ScenarioError(ErrorKind kind, const std::string& message, std::string path, long offset = -1)
      : Error(kind, message), path_(std::move(path)), offset_(offset) {}
  const std::string& path() const { return path_; }
  long offset() const { return offset_; }  // -1 unless an expression failed to parse

 private:
  std::string path_;
  long offset_;
};

// One requested check, e.g. "flat_zero" or "scalar_curvature=2@1e-6".
struct CheckSpec {
  std::string text;
  std::string name;
  std::optional<double> expected;
  double tolerance = 0.0;
};

struct GridAxis {
  int coord = 0;  // index into the total-space coordinates
  double lo = 0.0, hi = 0.0;
  int count = 1;
};

struct GridSpec {
  std::vector<GridAxis> axes;
  std::vector<double> pinned;        // every coordinate; axes override theirs
  std::vector<std::string> columns;  // e.g. "scalar", "g_1_1", "N_1_2", "R_h_1_1_1_2"
};

struct Scenario {
  std::string name;
  std::string space;  // finsler, lagrange, generalized_lagrange, cartan, hamilton, generalized_hamilton, raw_vbundle, raw_cvbundle
  int n = 0, m = 0;
  std::string function;  // F, L, K or H
  std::vector<std::vector<std::string>> g, h, N, base_metric;
  ConnectionKind connection = ConnectionKind::canonical;
  std::vector<std::vector<double>> points;
  std::optional<SamplerSpec> sampler;
  std::vector<CheckSpec> checks;
  HessianMode hessian_mode = HessianMode::of_L;
  SigmaNormalization sigma_normalization = SigmaNormalization::standard;
  RicciConvention ricci_convention;
  bool detail = true;  // per-point field dumps
  std::optional<GridSpec> grid;
  std::uint64_t seed = 1;
  json source;  // normalized document, hashed into the report
};

// Named checks and their default tolerances.
struct CheckInfo {
  const char* name;
  double tolerance;
  const char* description;
};
const std::vector<CheckInfo>& known_checks();

Scenario parse_scenario(const json& doc, double tolerance_scale = 1.0, std::optional<std::uint64_t> seed = {});
Scenario parse_scenario_text(const std::string& text, double tolerance_scale = 1.0,
                             std::optional<std::uint64_t> seed = {});

// The geometry and the evaluation points of a scenario.
struct Model {
  std::unique_ptr<GeometrySource> space;
  NdArray<ScalarField> base_metric;  // empty unless given
  std::vector<ScalarField> expressions;  // every scenario expression, for the ad_fd check
  std::vector<PointU> points;
  SamplerStats sampler_stats;
};
Model build_model(const Scenario& s);
std::unique_ptr<GeometrySource> build_space(const Scenario& s);

}  // namespace anholkit::report
