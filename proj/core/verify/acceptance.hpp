#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace anholkit::verify {

// One measured quantity inside a criterion. Controls must exceed their threshold instead.
struct SubCheck {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool control = false;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string title;
  std::vector<SubCheck> checks;
  std::string note;  // exception text when the criterion could not run
  bool pass = false;
  double elapsed_ms = 0.0;
};

struct AcceptanceOptions {
  double tolerance_scale = 1.0;
  std::uint64_t seed = 20240601;
  int jobs = 1;
};

// all, geometry, clifford, spinor, tooling, a criterion name or its number.
std::vector<std::string> suite_names();
// Criterion ids of a suite; throws Error(invalid_argument) for unknown names.
std::vector<int> suite_members(const std::string& suite);

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, const std::string& suite = "all");

// "PASS  3 homogeneity  worst 2.2e-16 <= 1e-09 ..." one line per criterion.
std::string format_line(const CriterionResult& r);
nlohmann::json acceptance_json(const std::vector<CriterionResult>& results, bool timing);

}  // namespace anholkit::verify
