#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "commands.hpp"
#include "grid.hpp"
#include "serialize.hpp"

using namespace anholkit;
using namespace anholkit::report;

namespace {

const char* kSphere = R"json({
  "name": "sphere",
  "space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + sin(x1)^2*y2^2)",
            "base_metric": [["1", "0"], ["0", "sin(x1)^2"]]},
  "connection": "canonical",
  "points": [[0.8, 0.3, 0.5, -0.7]],
  "sampler": {"seed": 9, "count": 5, "box": [[0.4, 2.7], [-1, 1], [-1, 1], [-1, 1]]},
  "checks": ["riemann_reduction", "scalar_curvature=2@1e-6", "metricity", "anholonomy"]
})json";

std::string with_checks(const std::string& checks) {
  return R"json({"space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + y2^2)"},
    "points": [[0.1, 0.2, 0.5, 0.5], [0.3, -0.2, -0.4, 0.9]], "checks": )json" +
         checks + "}";
}

ScenarioError error_of(const std::string& text) {
  try {
    build_model(parse_scenario_text(text));
  } catch (const ScenarioError& e) {
    return e;
  }
  return ScenarioError(ErrorKind::validation, "no error", "");
}

}  // namespace

TEST_CASE("numbers keep 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::nan("")) == "null");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(write_json(json{{"a", {1.5, 2}}}, 2) == "{\n  \"a\": [1.5, 2]\n}\n");
}

TEST_CASE("check strings carry expected values and tolerances") {
  auto s = parse_scenario_text(with_checks(R"(["flat_zero", "scalar_curvature=2@1e-6"])"), 10.0);
  REQUIRE(s.checks.size() == 2);
  CHECK(s.checks[0].tolerance == doctest::Approx(1e-8));
  CHECK(s.checks[1].expected.value() == 2.0);
  CHECK(s.checks[1].tolerance == doctest::Approx(1e-5));
}

TEST_CASE("validation errors name their location") {
  CHECK(error_of(with_checks(R"(["flat_zero", "flat_zero"])")).path() == "$.checks[1]");
  CHECK(error_of(with_checks(R"(["nosuch"])")).path() == "$.checks[0]");
  auto syntax = error_of(R"json({"space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 +* y2^2)"}, "points": [[0,0,1,1]], "checks": ["flat_zero"]})json");
  CHECK(syntax.kind() == ErrorKind::syntax);
  CHECK(syntax.offset() == 11);
  CHECK(syntax.path() == "$.space.F");
  CHECK(error_of(R"json({"space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + y2^2)"}})json").kind() == ErrorKind::validation);
  CHECK(error_of(R"json({"space": {"kind": "torus", "n": 2}})json").path() == "$.space.kind");
  CHECK(error_of(R"json({"space": {"kind": "finsler", "n": 5, "F": "y1"}, "points": [[0]]})json").kind() != ErrorKind::syntax);
  CHECK(error_of("{\"space\": ").kind() == ErrorKind::syntax);
}

TEST_CASE("scenario runs and reports every requested check once") {
  auto s = parse_scenario_text(kSphere);
  auto r = run_scenario(s);
  CHECK(r.points.size() == 6);
  REQUIRE(r.checks.size() == 4);
  for (const auto& c : r.checks) {
    CHECK(c.pass);
    CHECK(c.evaluated == 6);
  }
  CHECK(r.pass);
  CHECK(exit_code(r) == 0);
  CHECK(r.hash.size() == 16);
  CHECK(lookup_column(r.points[0].blocks, "scalar") == doctest::Approx(2.0));
  CHECK(lookup_column(r.points[0].blocks, "g_1_1") == doctest::Approx(1.0));
  CHECK_THROWS(lookup_column(r.points[0].blocks, "R_h_1_1_1_9"));
}

TEST_CASE("reports do not depend on the worker count") {
  CommandOptions o;
  o.timing = false;
  const auto one = analyze_command(kSphere, o);
  for (int jobs : {2, 3, 8}) {
    o.jobs = jobs;
    CHECK(analyze_command(kSphere, o).body == one.body);
  }
  o.seed = 12345;
  CHECK(analyze_command(kSphere, o).body != one.body);
}

TEST_CASE("exit codes follow the pass/fail contract") {
  // Synthetic scenarios whose checks pass or fail by construction.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> curv(-3.0, 3.0);
  for (int t = 0; t < 10; ++t) {
    const double claim = curv(rng);
    const bool should_pass = std::abs(claim) <= 1e-6;
    const std::string checks = "[\"flat_zero\", \"scalar_curvature=" + format_number(claim) + "@1e-6\"]";
    const auto out = analyze_command(with_checks(checks));
    CHECK(out.code == (should_pass ? 0 : 1));
    CHECK(json::parse(out.body)["checks"].size() == 2);
  }
  CHECK(analyze_command(with_checks(R"(["scalar_curvature=0"])")).code == 0);
  CHECK(analyze_command(with_checks(R"(["nosuch"])")).code == 2);
  const auto bad = analyze_command("{not json");
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.body)["error"].contains("message"));
  CommandOptions csv;
  csv.format = "csv";
  CHECK(analyze_command(with_checks(R"(["flat_zero"])"), csv).body.rfind("check,name,", 0) == 0);
  csv.format = "xml";
  CHECK(analyze_command(with_checks(R"(["flat_zero"])"), csv).code == 2);
}

TEST_CASE("points that fail to evaluate are reported, not fatal") {
  const std::string text = R"json({"space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + y2^2)"},
    "points": [[0.1, 0.2, 0.5, 0.5], [0.1, 0.2, 0.0, 0.0]], "checks": ["flat_zero"]})json";
  auto r = run_scenario(parse_scenario_text(text));
  CHECK(r.points[0].ok);
  CHECK_FALSE(r.points[1].ok);
  CHECK(r.checks[0].failed_points == 1);
  CHECK_FALSE(r.pass);
}

TEST_CASE("grid rows run over the first axis fastest") {
  const std::string text = R"json({"space": {"kind": "finsler", "n": 2, "F": "sqrt(y1^2 + sin(x1)^2*y2^2)"},
    "grid": {"pinned": [1.0, 0.0, 0.5, 0.5],
             "axes": [{"coord": "x1", "min": 0.5, "max": 1.5, "count": 3}, {"coord": "y2", "min": -1, "max": 1, "count": 2}],
             "columns": ["scalar", "g_2_2"]}})json";
  auto t = run_grid(parse_scenario_text(text));
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[1].coords[0] == doctest::Approx(1.0));
  CHECK(t.rows[1].coords[3] == doctest::Approx(-1.0));
  CHECK(t.rows[3].coords[3] == doctest::Approx(1.0));
  for (const auto& row : t.rows) {
    CHECK(row.status == "ok");
    CHECK(row.values[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(row.values[1] == doctest::Approx(std::sin(row.coords[0]) * std::sin(row.coords[0])));
  }
  CHECK(grid_csv(t).rfind("x1,x2,y1,y2,status,scalar,g_2_2\n", 0) == 0);
  // Unknown columns and axes are validation errors.
  std::string bad = text;
  bad.replace(bad.find("g_2_2"), 5, "g_3_3");
  CHECK(grid_command(bad).code == 2);
}
