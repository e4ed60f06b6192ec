#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "anholkit/spinor.hpp"
#include "checks.hpp"

namespace anholkit::report {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

NdArray<double> jet_values(const NdArray<Jet>& a) {
  NdArray<double> out(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i].value();
  return out;
}

double block_max(const Blocks& blocks, std::initializer_list<const char*> names) {
  double r = 0.0;
  for (const auto& [name, arr] : blocks)
    for (const char* want : names)
      if (name == want)
        for (double v : arr.data()) r = std::max(r, std::fabs(v));
  return r;
}

const NdArray<double>& block(const Blocks& blocks, const std::string& name) {
  for (const auto& [n, arr] : blocks)
    if (n == name) return arr;
  fail(ErrorKind::invalid_argument, "no block " + name);
}

// Splits "R_h_1_2_1_2" into a block name and 0-based indices; nullopt when nothing matches.
std::optional<std::pair<std::string, std::vector<int>>> split_column(const Blocks& blocks, const std::string& column) {
  std::vector<std::string> tok;
  std::size_t start = 0;
  while (true) {
    auto p = column.find('_', start);
    tok.push_back(column.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  for (std::size_t k = 1; k <= tok.size(); ++k) {
    std::string name = tok[0];
    for (std::size_t i = 1; i < k; ++i) name += "_" + tok[i];
    for (const auto& [bn, arr] : blocks) {
      if (bn != name || static_cast<std::size_t>(arr.rank()) != tok.size() - k) continue;
      std::vector<int> idx;
      bool good = true;
      for (std::size_t i = k; i < tok.size() && good; ++i) {
        const auto& t = tok[i];
        if (t.empty() || t.size() > 2 || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          good = false;
          break;
        }
        int v = std::stoi(t) - 1;
        if (v < 0 || v >= arr.extent(static_cast<int>(idx.size()))) good = false;
        idx.push_back(v);
      }
      if (good) return std::make_pair(name, idx);
    }
  }
  return std::nullopt;
}

std::uint64_t point_seed(std::uint64_t seed, int index) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(index) + 1;
}

struct Context {
  const Scenario& s;
  const Model& model;
};

double evaluate_check(const Context& c, const CheckSpec& check, const PointU& u, int index, const Blocks& b) {
  const auto& space = *c.model.space;
  const auto kind = c.s.connection;
  const auto& name = check.name;
  if (name == "flat_zero")
    return block_max(b, {"Omega", "T_h", "T_hv", "T_v", "P", "S", "R_h", "R_v", "P_h", "P_v", "S_h", "S_v", "Ric_hh",
                         "Ric_hv", "Ric_vh", "Ric_vv", "scalar", "G_hh", "G_hv", "G_vh", "G_vv"});
  if (name == "torsion_zero") return block_max(b, {"T_h", "T_hv", "T_v", "P", "S"});
  if (name == "curvature_zero") return block_max(b, {"R_h", "R_v", "P_h", "P_v", "S_h", "S_v"});
  if (name == "scalar_curvature") return std::fabs(block(b, "scalar").data()[0] - *check.expected);
  if (name == "riemann_reduction") return verify::riemann_reduction(space, c.model.base_metric, u).max();
  if (name == "homogeneity") {
    const auto* fs = dynamic_cast<const FinslerSpace*>(&space);
    if (!fs) fail(ErrorKind::validation, "homogeneity needs a Finsler space");
    return homogeneity_report(*fs, {u}).max();
  }
  if (name == "metricity" || name == "hv_metricity") {
    auto f = space.evaluate(u, required_order(space, Stage::connection));
    auto r = metricity_residual(build_connection(kind, f), f);
    return name == "metricity" ? r.max() : std::max(r.hh, r.vv);
  }
  if (name == "anholonomy") return verify::anholonomy_residual(space, u, point_seed(c.s.seed, index));
  if (name == "ad_fd") {
    double r = 0.0;
    auto coords = u.coords();
    for (const auto& e : c.model.expressions) r = std::max(r, verify::ad_fd_residual(e, coords, 3));
    return r;
  }
  if (name == "positive_definite") {
    const auto& g = block(b, "g");
    const auto& h = block(b, "h");
    return std::max({0.0, -symmetric_eigenvalues(g).front(), -symmetric_eigenvalues(h).front()});
  }
  if (name == "spinor_scalar") return spinor_tensor_cross_check(space, kind, u, c.s.sigma_normalization).scalar_diff;
  if (name == "leibniz")
    return leibniz_transfer_residual(space, kind, u, point_seed(c.s.seed, index), c.s.sigma_normalization);
  if (name == "torsion_commutator") return torsion_commutator_residual(space, kind, u, point_seed(c.s.seed, index));
  if (name == "almost_structure") return almost_structure_checks(space, u).max();
  fail(ErrorKind::validation, "unknown check " + name);
}

}  // namespace

Blocks point_blocks(const GeometrySource& space, ConnectionKind kind, const PointU& u, const RicciConvention& conv) {
  auto f = space.evaluate(u, required_order(space, Stage::curvature));
  auto conn = build_connection(kind, f);
  auto T = d_torsions(conn, f.nconn);
  auto R = d_curvatures(conn, f.nconn);
  auto ric = ricci(R, f.metric, conv);
  auto G = einstein(ric, f.metric);
  NdArray<double> scalar({}, ric.scalar);
  return {
      {"g", f.metric.g_values()},      {"h", f.metric.h_values()},          {"N", jet_values(f.nconn.raw())},
      {"L_h", jet_values(conn.L_h)},   {"L_v", jet_values(conn.L_v)},       {"C_h", jet_values(conn.C_h)},
      {"C_v", jet_values(conn.C_v)},   {"Omega", jet_values(n_curvature(f.nconn))},
      {"T_h", T.T_h},                  {"T_hv", T.T_hv},                    {"T_v", T.T_v},
      {"P", T.P},                      {"S", T.S},                          {"R_h", R.R_h},
      {"R_v", R.R_v},                  {"P_h", R.P_h},                      {"P_v", R.P_v},
      {"S_h", R.S_h},                  {"S_v", R.S_v},                      {"Ric_hh", ric.R_hh},
      {"Ric_hv", ric.R_hv},            {"Ric_vh", ric.R_vh},                {"Ric_vv", ric.R_vv},
      {"scalar", scalar},              {"G_hh", G.G_hh},                    {"G_hv", G.G_hv},
      {"G_vh", G.G_vh},                {"G_vv", G.G_vv},
  };
}

Blocks shape_blocks(int n, int m) {
  auto z = [](std::vector<int> shape) { return NdArray<double>(std::move(shape), 0.0); };
  return {
      {"g", z({n, n})},         {"h", z({m, m})},          {"N", z({m, n})},          {"L_h", z({n, n, n})},
      {"L_v", z({m, m, n})},    {"C_h", z({n, n, m})},     {"C_v", z({m, m, m})},     {"Omega", z({m, n, n})},
      {"T_h", z({n, n, n})},    {"T_hv", z({n, n, m})},    {"T_v", z({m, n, n})},     {"P", z({m, m, n})},
      {"S", z({m, m, m})},      {"R_h", z({n, n, n, n})},  {"R_v", z({m, m, n, n})},  {"P_h", z({n, n, n, m})},
      {"P_v", z({m, m, n, m})}, {"S_h", z({n, n, m, m})},  {"S_v", z({m, m, m, m})},  {"Ric_hh", z({n, n})},
      {"Ric_hv", z({n, m})},    {"Ric_vh", z({m, n})},     {"Ric_vv", z({m, m})},     {"scalar", z({})},
      {"G_hh", z({n, n})},      {"G_hv", z({n, m})},       {"G_vh", z({m, n})},       {"G_vv", z({m, m})},
  };
}

void validate_column(const Blocks& blocks, const std::string& column) {
  if (!split_column(blocks, column))
    throw ScenarioError(ErrorKind::validation, "unknown column '" + column + "'", "$.grid.columns");
}

double lookup_column(const Blocks& blocks, const std::string& column) {
  auto sc = split_column(blocks, column);
  if (!sc) throw ScenarioError(ErrorKind::validation, "unknown column '" + column + "'", "$.grid.columns");
  return block(blocks, sc->first).at(sc->second);
}

std::string scenario_hash(const json& doc) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& f) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) f(i);
    });
  for (auto& th : pool) th.join();
}

Report run_scenario(const Scenario& s, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Model model = build_model(s);
  Context ctx{s, model};

  Report r;
  r.name = s.name;
  r.hash = scenario_hash(s.source);
  r.space = s.space;
  r.n = s.n;
  r.m = s.m;
  r.connection = to_string(s.connection);
  r.seed = s.seed;
  r.sampled = s.sampler.has_value();
  r.sampler = model.sampler_stats;
  r.jobs = opts.jobs;
  const int count = static_cast<int>(model.points.size());
  r.points.resize(static_cast<std::size_t>(count));

  parallel_for(count, opts.jobs, [&](int i) {
    const PointU& u = model.points[static_cast<std::size_t>(i)];
    PointResult& pr = r.points[static_cast<std::size_t>(i)];
    pr.index = i;
    pr.coords = u.coords();
    pr.residuals.assign(s.checks.size(), kNaN);
    Blocks blocks;
    try {
      blocks = point_blocks(*model.space, s.connection, u, s.ricci_convention);
    } catch (const Error& e) {
      pr.ok = false;
      pr.error = std::string(to_string(e.kind())) + ": " + e.what();
      return;
    } catch (const std::exception& e) {
      pr.ok = false;
      pr.error = e.what();
      return;
    }
    for (std::size_t k = 0; k < s.checks.size(); ++k) {
      try {
        pr.residuals[k] = evaluate_check(ctx, s.checks[k], u, i, blocks);
      } catch (const Error& e) {
        pr.residuals[k] = kNaN;
        if (pr.error.empty()) pr.error = s.checks[k].text + ": " + to_string(e.kind()) + ": " + e.what();
      } catch (const std::exception& e) {
        pr.residuals[k] = kNaN;
        if (pr.error.empty()) pr.error = s.checks[k].text + ": " + e.what();
      }
    }
    if (s.detail) pr.blocks = std::move(blocks);
  });

  for (std::size_t k = 0; k < s.checks.size(); ++k) {
    CheckResult cr;
    cr.spec = s.checks[k];
    double sum = 0.0;
    for (const auto& pr : r.points) {
      const double v = pr.residuals.empty() ? kNaN : pr.residuals[k];
      if (std::isnan(v)) {
        ++cr.failed_points;
        continue;
      }
      cr.max_residual = std::max(cr.max_residual, v);
      sum += v;
      ++cr.evaluated;
    }
    cr.mean_residual = cr.evaluated > 0 ? sum / cr.evaluated : 0.0;
    cr.pass = cr.failed_points == 0 && cr.evaluated > 0 && cr.max_residual <= cr.spec.tolerance;
    r.pass = r.pass && cr.pass;
    r.checks.push_back(std::move(cr));
  }
  for (const auto& pr : r.points) r.pass = r.pass && pr.ok;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

int exit_code(const Report& r) { return r.pass ? 0 : 1; }

}  // namespace anholkit::report
