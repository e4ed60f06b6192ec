#include "grid.hpp"

#include <cmath>

#include "serialize.hpp"

namespace anholkit::report {

GridTable run_grid(const Scenario& s, const RunOptions& opts) {
  if (!s.grid) throw ScenarioError(ErrorKind::validation, "scenario has no grid section", "$.grid");
  const GridSpec& gs = *s.grid;
  auto space = build_space(s);
  const auto& chart = space->chart();
  auto shapes = shape_blocks(chart.n, chart.m);
  for (const auto& c : gs.columns) validate_column(shapes, c);

  GridTable t;
  t.coord_names = chart.context.names();
  t.columns = gs.columns;
  std::size_t total = 1;
  for (const auto& a : gs.axes) total *= static_cast<std::size_t>(a.count);
  t.rows.resize(total);

  parallel_for(static_cast<int>(total), opts.jobs, [&](int node) {
    std::vector<double> c = gs.pinned;
    std::size_t rest = static_cast<std::size_t>(node);
    for (const auto& a : gs.axes) {
      const std::size_t k = rest % static_cast<std::size_t>(a.count);
      rest /= static_cast<std::size_t>(a.count);
      c[static_cast<std::size_t>(a.coord)] =
          a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * static_cast<double>(k) / static_cast<double>(a.count - 1);
    }
    GridRow& row = t.rows[static_cast<std::size_t>(node)];
    row.coords = c;
    PointU u = PointU::from_coords(chart, c);
    double fiber = 0.0;
    for (double v : u.fiber) fiber += v * v;
    const double margin = s.sampler ? s.sampler->null_margin : 0.0;
    if (!space->admissible(u) || std::sqrt(fiber) < margin) {
      row.status = "skipped";
      return;
    }
    try {
      auto blocks = point_blocks(*space, s.connection, u, s.ricci_convention);
      for (const auto& col : gs.columns) row.values.push_back(lookup_column(blocks, col));
      row.status = "ok";
    } catch (const Error& e) {
      row.status = "error";
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
      row.values.clear();
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
      row.values.clear();
    }
  });
  return t;
}

std::string grid_csv(const GridTable& t) {
  std::string out;
  for (const auto& n : t.coord_names) out += n + ",";
  out += "status";
  for (const auto& c : t.columns) out += "," + c;
  out += '\n';
  for (const auto& r : t.rows) {
    for (double v : r.coords) out += format_number(v) + ",";
    out += r.status;
    for (std::size_t k = 0; k < t.columns.size(); ++k)
      out += "," + (k < r.values.size() ? format_number(r.values[k]) : std::string());
    out += '\n';
  }
  return out;
}

json grid_json(const GridTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json rj{{"coords", r.coords}, {"status", r.status}};
    if (r.status == "ok") rj["values"] = r.values;
    if (!r.error.empty()) rj["error"] = r.error;
    rows.push_back(rj);
  }
  return json{{"coordinates", t.coord_names}, {"columns", t.columns}, {"rows", rows}};
}

}  // namespace anholkit::report
