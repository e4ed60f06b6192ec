#pragma once

#include <string>
#include <vector>

#include "runner.hpp"

namespace anholkit::report {

struct GridRow {
  std::vector<double> coords;
  std::string status;  // ok, skipped (inside the null margin) or error
  std::string error;
  std::vector<double> values;  // one per column, empty unless ok
};

struct GridTable {
  std::vector<std::string> coord_names;
  std::vector<std::string> columns;
  std::vector<GridRow> rows;
};

// Nodes run over the first axis fastest.
GridTable run_grid(const Scenario& s, const RunOptions& opts = {});
std::string grid_csv(const GridTable& t);
json grid_json(const GridTable& t);

}  // namespace anholkit::report
