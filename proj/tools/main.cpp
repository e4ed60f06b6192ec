#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "acceptance.hpp"
#include "clifford_cmd.hpp"
#include "commands.hpp"
#include "serialize.hpp"

namespace {

using anholkit::Error;
using anholkit::ErrorKind;
using anholkit::report::CommandOutput;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("anholkit");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ANHOLKIT_LOG")) {
    auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep warnings in that case
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
    else spdlog::warn("ANHOLKIT_LOG='{}' is not a level; using warn", env);
  }
}

CommandOutput usage_error(const std::string& message) {
  return {2, anholkit::report::write_json(anholkit::report::error_body(Error(ErrorKind::invalid_argument, message))),
          {}};
}

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  text.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

int finish(const CommandOutput& out, const std::string& output) {
  for (const auto& line : out.log) spdlog::info("{}", line);
  if (output.empty() || output == "-" || out.code == 2) {
    // Errors always go to stdout so scripts find them in one place.
    std::cout << out.body << std::flush;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cout << usage_error("cannot write '" + output + "'").body;
      return 2;
    }
    f << out.body;
    spdlog::info("report written to {}", output);
  }
  if (out.code == 1) spdlog::warn("at least one check failed");
  return out.code;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Finsler, Lagrange and Hamilton geometry with Clifford and spinor checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input = "-", output, format;
  double tolerance_scale = 1.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool no_timing = false;
  auto* seed_opt = app.add_option("--seed", seed, "Override the scenario or suite seed");
  app.add_option("--input", input, "Scenario JSON file, - for stdin");
  app.add_option("--output", output, "Write the result here instead of stdout");
  app.add_option("--format", format, "json or csv (verify also accepts text)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tolerance-scale", tolerance_scale, "Multiply every tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--no-timing", no_timing, "Leave timing out of reports");

  auto* analyze = app.add_subcommand("analyze", "Run a scenario and its checks");
  auto* grid = app.add_subcommand("grid", "Tabulate field components over a coordinate grid");
  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "all, geometry, clifford, spinor, tooling, a criterion name or number");

  auto* clifford = app.add_subcommand("clifford", "Clifford algebra tools");
  clifford->require_subcommand(1);
  clifford->fallthrough();
  anholkit::cli::CliffordArgs ca;
  clifford->add_option("--p", ca.p, "Generators squaring to -1");
  clifford->add_option("--q", ca.q, "Generators squaring to +1");
  clifford->add_option("--vp", ca.vp, "Vertical block p (rep)");
  clifford->add_option("--vq", ca.vq, "Vertical block q (rep)");
  clifford->add_option("--normalization", ca.normalization, "standard or paper");
  auto* rep = clifford->add_subcommand("rep", "Emit the sigma matrices");
  auto* check = clifford->add_subcommand("check", "Anticommutation, faithfulness and double-cover suites");
  auto* epsilon = clifford->add_subcommand("epsilon", "Epsilon objects and symmetry classes");
  auto* spin = clifford->add_subcommand("spin-demo", "rho(u) for a rotor in one coordinate plane");
  spin->add_option("--angle", ca.angle, "Rotation angle or rapidity");
  std::vector<int> plane;
  spin->add_option("--plane", plane, "Two 1-based generator indices")->expected(2)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << usage_error(e.what()).body;
    return 2;
  }

  anholkit::report::CommandOptions opts;
  opts.jobs = jobs;
  opts.tolerance_scale = tolerance_scale;
  if (*seed_opt) opts.seed = seed;
  opts.timing = !no_timing;

  if (*analyze || *grid) {
    if (format == "text") return finish(usage_error("--format text is only for verify"), output);
    opts.format = format.empty() ? "json" : format;
    std::string text;
    if (!read_input(input, text)) return finish(usage_error("cannot read '" + input + "'"), output);
    spdlog::debug("read {} bytes from {}", text.size(), input);
    return finish(*analyze ? anholkit::report::analyze_command(text, opts) : anholkit::report::grid_command(text, opts),
                  output);
  }

  if (*verify) {
    namespace v = anholkit::verify;
    try {
      v::suite_members(suite);
    } catch (const Error& e) {
      return finish({2, anholkit::report::write_json(anholkit::report::error_body(e)), {}}, output);
    }
    v::AcceptanceOptions ao;
    ao.tolerance_scale = tolerance_scale;
    ao.jobs = jobs;
    if (*seed_opt) ao.seed = seed;
    std::string body;
    bool pass = true;
    const bool json_out = format == "json";
    if (format == "csv") return finish(usage_error("verify writes text or json"), output);
    std::vector<v::CriterionResult> results;
    for (int id : v::suite_members(suite)) {
      results.push_back(v::run_criterion(id, ao));
      pass = pass && results.back().pass;
      spdlog::info("{}", v::format_line(results.back()));
      if (!json_out) {
        body += v::format_line(results.back()) + "\n";
        for (const auto& c : results.back().checks)
          body += std::string("      ") + (c.pass ? "ok   " : "FAIL ") + c.name + ": " +
                  anholkit::report::format_number(c.measured) + (c.control ? " > " : " <= ") +
                  anholkit::report::format_number(c.tolerance) + "\n";
      }
    }
    if (json_out) body = anholkit::report::write_json(v::acceptance_json(results, !no_timing));
    else body += std::string(pass ? "all criteria passed" : "some criteria FAILED") + "\n";
    return finish({pass ? 0 : 1, body, {}}, output);
  }

  if (*clifford) {
    if (!plane.empty()) {
      ca.plane_a = plane[0];
      ca.plane_b = plane[1];
    }
    ca.tolerance_scale = tolerance_scale;
    if (*seed_opt) ca.seed = seed;
    namespace c = anholkit::cli;
    if (*rep) return finish(c::clifford_rep(ca), output);
    if (*check) return finish(c::clifford_check(ca), output);
    if (*epsilon) return finish(c::clifford_epsilon(ca), output);
    if (*spin) return finish(c::clifford_spin_demo(ca), output);
  }
  return 2;
}
