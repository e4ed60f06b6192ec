#include "commands.hpp"

#include <sstream>

#include "grid.hpp"
#include "serialize.hpp"

namespace anholkit::report {

namespace {

CommandOutput error_output(const Error& e) { return {2, write_json(error_body(e))}; }

template <class F>
CommandOutput guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_output(e);
  } catch (const json::exception& e) {
    return error_output(ScenarioError(ErrorKind::validation, e.what(), ""));
  }
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv")
    throw ScenarioError(ErrorKind::invalid_argument, "unknown format '" + format + "'", "--format");
}

}  // namespace

std::string checks_csv(const Report& r) {
  std::ostringstream out;
  out << "check,name,expected,tolerance,max_residual,mean_residual,evaluated_points,failed_points,pass\n";
  for (const auto& c : r.checks) {
    out << c.spec.text << ',' << c.spec.name << ',' << (c.spec.expected ? format_number(*c.spec.expected) : "")
        << ',' << format_number(c.spec.tolerance) << ',' << format_number(c.max_residual) << ','
        << format_number(c.mean_residual) << ',' << c.evaluated << ',' << c.failed_points << ','
        << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

CommandOutput analyze_command(const std::string& scenario_text, const CommandOptions& opts) {
  return guarded([&]() -> CommandOutput {
    check_format(opts.format);
    Scenario s = parse_scenario_text(scenario_text, opts.tolerance_scale, opts.seed);
    if (s.points.empty() && !s.sampler)
      throw ScenarioError(ErrorKind::validation, "analyze needs explicit points or a sampler", "$.points");
    Report r = run_scenario(s, RunOptions{opts.jobs});
    std::string body = opts.format == "csv" ? checks_csv(r) : write_json(report_to_json(r, opts.timing));
    CommandOutput out{exit_code(r), std::move(body), {}};
    if (r.sampled)
      out.log.push_back("sampler: " + std::to_string(r.sampler.attempts) + " draws, rejected " +
                        std::to_string(r.sampler.rejected_margin) +
                        " inside the null margin and " + std::to_string(r.sampler.rejected_metric) +
                        " not positive definite");
    for (const auto& p : r.points)
      if (!p.ok) out.log.push_back("point " + std::to_string(p.index) + ": " + p.error);
    for (const auto& c : r.checks)
      out.log.push_back("check " + c.spec.text + ": " + (c.pass ? "pass" : "FAIL") + " max " +
                        format_number(c.max_residual) + " tol " + format_number(c.spec.tolerance));
    return out;
  });
}

CommandOutput grid_command(const std::string& scenario_text, const CommandOptions& opts) {
  return guarded([&]() -> CommandOutput {
    check_format(opts.format);
    Scenario s = parse_scenario_text(scenario_text, opts.tolerance_scale, opts.seed);
    GridTable t = run_grid(s, RunOptions{opts.jobs});
    return {0, opts.format == "csv" ? grid_csv(t) : write_json(grid_json(t))};
  });
}

}  // namespace anholkit::report
