#include "scenario.hpp"

#include <charconv>
#include <set>

namespace anholkit::report {
namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw ScenarioError(ErrorKind::validation, message, path);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) invalid(path + "." + key, "missing field");
  return obj.at(key);
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) invalid(path, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) invalid(path, "expected a string");
  return v.get<std::string>();
}

std::vector<std::vector<std::string>> get_matrix(const json& v, int rows, int cols, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    invalid(path, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<std::string>> out;
  for (int r = 0; r < rows; ++r) {
    const auto& row = v[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      invalid(rp, "expected " + std::to_string(cols) + " entries");
    std::vector<std::string> cells;
    for (int c = 0; c < cols; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      if (cell.is_number())
        cells.push_back(cell.dump());
      else
        cells.push_back(get_string(cell, rp + "[" + std::to_string(c) + "]"));
    }
    out.push_back(std::move(cells));
  }
  return out;
}

std::vector<double> get_vector(const json& v, int size, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != size)
    invalid(path, "expected " + std::to_string(size) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) invalid(path, "not a number: '" + s + "'");
  return v;
}

const CheckInfo* find_check(const std::string& name) {
  for (const auto& c : known_checks())
    if (name == c.name) return &c;
  return nullptr;
}

ScalarField parse_field(const std::string& text, const VarContext& ctx, const std::string& path) {
  try {
    return parse(text, ctx);
  } catch (const ParseError& e) {
    throw ScenarioError(e.kind(), e.what(), path, static_cast<long>(e.offset()));
  }
}

NdArray<ScalarField> parse_matrix(const std::vector<std::vector<std::string>>& m, const VarContext& ctx,
                                  const std::string& path) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows > 0 ? static_cast<int>(m[0].size()) : 0;
  NdArray<ScalarField> out({rows, cols});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      out(r, c) = parse_field(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], ctx,
                              path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return out;
}

bool is_tangent_kind(const std::string& k) {
  return k == "finsler" || k == "lagrange" || k == "generalized_lagrange" || k == "raw_vbundle";
}

}  // namespace

const std::vector<CheckInfo>& known_checks() {
  static const std::vector<CheckInfo> checks{
      {"flat_zero", 1e-9, "every torsion, curvature, Omega, Ricci, scalar and Einstein component vanishes"},
      {"torsion_zero", 1e-9, "every torsion component vanishes"},
      {"curvature_zero", 1e-9, "every curvature block vanishes"},
      {"riemann_reduction", 1e-8, "N, L and R_h match the Levi-Civita geometry of base_metric"},
      {"scalar_curvature", 1e-6, "scalar curvature equals the expected value"},
      {"homogeneity", 1e-9, "Finsler homogeneity identities"},
      {"metricity", 1e-8, "all four metricity blocks of the connection"},
      {"hv_metricity", 1e-8, "D_k g_ij and D_c h_ab"},
      {"anholonomy", 1e-10, "[delta_i, delta_j] = Omega^a_ij d_a on cubic test functions"},
      {"ad_fd", 1e-5, "jet partials of every scenario expression against finite differences, scaled by 1 + |value|"},
      {"positive_definite", 1e-12, "smallest eigenvalue of g and h, reported as a deficit"},
      {"spinor_scalar", 1e-6, "spinor-route scalar curvature equals the tensor scalar curvature"},
      {"leibniz", 1e-8, "spinor covariant derivative of sigma-converted vectors"},
      {"torsion_commutator", 1e-9, "[D_mu, D_nu] f = -T^l_mu.nu delta_l f"},
      {"almost_structure", 1e-6, "almost complex structure identities (n = m)"},
  };
  return checks;
}

Scenario parse_scenario(const json& doc, double tolerance_scale, std::optional<std::uint64_t> seed) {
  if (!doc.is_object()) invalid("$", "scenario must be a JSON object");
  if (!(tolerance_scale > 0.0)) invalid("--tolerance-scale", "must be positive");
  Scenario s;
  s.source = doc;
  s.name = doc.contains("name") ? get_string(doc["name"], "$.name") : "scenario";

  const json& sp = require(doc, "space", "$");
  s.space = get_string(require(sp, "kind", "$.space"), "$.space.kind");
  static const std::set<std::string> kinds{"finsler", "lagrange", "generalized_lagrange", "cartan", "hamilton",
                                           "generalized_hamilton", "raw_vbundle", "raw_cvbundle"};
  if (!kinds.count(s.space)) invalid("$.space.kind", "unknown space kind '" + s.space + "'");
  s.n = get_int(require(sp, "n", "$.space"), "$.space.n");
  const bool raw = s.space == "raw_vbundle" || s.space == "raw_cvbundle";
  s.m = sp.contains("m") ? get_int(sp["m"], "$.space.m") : s.n;
  if (s.n < 1 || s.m < 1) invalid("$.space", "dimensions must be positive");
  if (!raw && s.m != s.n) invalid("$.space.m", "this space kind needs m = n");
  if (s.n + s.m > 8) invalid("$.space", "total dimension is capped at 8");

  const char* fn = s.space == "finsler" ? "F" : s.space == "lagrange" ? "L" : s.space == "cartan" ? "K"
                                              : s.space == "hamilton" ? "H" : nullptr;
  if (fn) {
    s.function = get_string(require(sp, fn, "$.space"), std::string("$.space.") + fn);
  } else {
    s.g = get_matrix(require(sp, "g", "$.space"), s.n, s.n, "$.space.g");
    if (raw) s.h = get_matrix(require(sp, "h", "$.space"), s.m, s.m, "$.space.h");
    s.N = get_matrix(require(sp, "N", "$.space"), s.m, s.n, "$.space.N");
  }
  if (sp.contains("base_metric")) s.base_metric = get_matrix(sp["base_metric"], s.n, s.n, "$.space.base_metric");

  if (doc.contains("connection")) {
    const std::string c = get_string(doc["connection"], "$.connection");
    try {
      s.connection = connection_kind_from_string(c);
    } catch (const Error&) {
      invalid("$.connection", "unknown connection '" + c + "'");
    }
  }

  const json opts = doc.value("options", json::object());
  if (!opts.is_object()) invalid("$.options", "expected an object");
  if (opts.contains("hessian_mode")) {
    const std::string h = get_string(opts["hessian_mode"], "$.options.hessian_mode");
    if (h == "L") s.hessian_mode = HessianMode::of_L;
    else if (h == "L2") s.hessian_mode = HessianMode::of_L_squared;
    else invalid("$.options.hessian_mode", "expected L or L2");
  }
  if (opts.contains("sigma_normalization")) {
    const std::string h = get_string(opts["sigma_normalization"], "$.options.sigma_normalization");
    if (h == "standard") s.sigma_normalization = SigmaNormalization::standard;
    else if (h == "paper") s.sigma_normalization = SigmaNormalization::paper;
    else invalid("$.options.sigma_normalization", "expected standard or paper");
  }
  if (opts.contains("ricci_convention")) {
    const json& rc = opts["ricci_convention"];
    if (rc.contains("mixed_hv")) s.ricci_convention.mixed_hv = get_number(rc["mixed_hv"], "$.options.ricci_convention.mixed_hv");
    if (rc.contains("mixed_vh")) s.ricci_convention.mixed_vh = get_number(rc["mixed_vh"], "$.options.ricci_convention.mixed_vh");
  }
  if (opts.contains("detail")) {
    const std::string d = get_string(opts["detail"], "$.options.detail");
    if (d != "full" && d != "summary") invalid("$.options.detail", "expected full or summary");
    s.detail = d == "full";
  }
  s.seed = seed ? *seed : (opts.contains("seed") ? static_cast<std::uint64_t>(get_int(opts["seed"], "$.options.seed")) : 1);

  const int dim = s.n + s.m;
  if (doc.contains("points")) {
    const json& pts = doc["points"];
    if (!pts.is_array()) invalid("$.points", "expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i)
      s.points.push_back(get_vector(pts[i], dim, "$.points[" + std::to_string(i) + "]"));
  }
  const bool homogeneous = s.space == "finsler" || s.space == "cartan";
  if (doc.contains("sampler")) {
    const json& sm = doc["sampler"];
    SamplerSpec spec;
    spec.seed = seed ? *seed : (sm.contains("seed") ? static_cast<std::uint64_t>(get_int(sm["seed"], "$.sampler.seed")) : s.seed);
    spec.count = get_int(require(sm, "count", "$.sampler"), "$.sampler.count");
    if (spec.count < 1) invalid("$.sampler.count", "must be positive");
    const json& box = require(sm, "box", "$.sampler");
    if (!box.is_array() || static_cast<int>(box.size()) != dim)
      invalid("$.sampler.box", "expected one interval per coordinate (" + std::to_string(dim) + ")");
    for (std::size_t i = 0; i < box.size(); ++i) {
      auto iv = get_vector(box[i], 2, "$.sampler.box[" + std::to_string(i) + "]");
      if (!(iv[0] <= iv[1])) invalid("$.sampler.box[" + std::to_string(i) + "]", "empty interval");
      spec.box.emplace_back(iv[0], iv[1]);
    }
    spec.null_margin = sm.contains("null_margin") ? get_number(sm["null_margin"], "$.sampler.null_margin")
                                                  : (homogeneous ? kDefaultNullMargin : 0.0);
    s.sampler = spec;
  }
  if (s.points.empty() && !s.sampler && !doc.contains("grid")) invalid("$", "no points: give points, a sampler or a grid");

  const json tolerances = doc.value("tolerances", json::object());
  if (!tolerances.is_object()) invalid("$.tolerances", "expected an object");
  for (auto it = tolerances.begin(); it != tolerances.end(); ++it) {
    if (!find_check(it.key())) invalid("$.tolerances." + it.key(), "unknown check");
    if (!(get_number(it.value(), "$.tolerances." + it.key()) > 0.0)) invalid("$.tolerances." + it.key(), "tolerance must be positive");
  }
  std::set<std::string> seen;
  if (doc.contains("checks")) {
    const json& cs = doc["checks"];
    if (!cs.is_array()) invalid("$.checks", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string path = "$.checks[" + std::to_string(i) + "]";
      CheckSpec c;
      c.text = get_string(cs[i], path);
      if (!seen.insert(c.text).second) invalid(path, "duplicate check '" + c.text + "'");
      std::string body = c.text;
      std::optional<double> tol;
      if (auto at = body.find('@'); at != std::string::npos) {
        tol = parse_double(body.substr(at + 1), path);
        body = body.substr(0, at);
      }
      if (auto eq = body.find('='); eq != std::string::npos) {
        c.expected = parse_double(body.substr(eq + 1), path);
        body = body.substr(0, eq);
      }
      c.name = body;
      const CheckInfo* info = find_check(c.name);
      if (!info) invalid(path, "unknown check '" + c.name + "'");
      if (c.name == "scalar_curvature" && !c.expected) invalid(path, "scalar_curvature needs an expected value (name=value)");
      if (c.name != "scalar_curvature" && c.expected) invalid(path, "only scalar_curvature takes a value");
      if (c.name == "riemann_reduction" && (s.base_metric.empty() || !is_tangent_kind(s.space)))
        invalid(path, "riemann_reduction needs space.base_metric on a tangent bundle");
      if (c.name == "homogeneity" && s.space != "finsler") invalid(path, "homogeneity applies to Finsler spaces");
      if (c.name == "almost_structure" && s.n != s.m) invalid(path, "almost_structure needs n = m");
      if (c.name == "ad_fd" && s.n + s.m > 6) invalid(path, "ad_fd is limited to 6 coordinates");
      double t = tol ? *tol : (tolerances.contains(c.name) ? tolerances[c.name].get<double>() : info->tolerance);
      if (!(t > 0.0)) invalid(path, "tolerance must be positive");
      c.tolerance = t * tolerance_scale;
      s.checks.push_back(std::move(c));
    }
  }

  if (doc.contains("grid")) {
    const json& gj = doc["grid"];
    GridSpec g;
    VarContext ctx(s.n, s.m, s.space == "cartan" || s.space == "hamilton" || s.space == "generalized_hamilton" ||
                                     s.space == "raw_cvbundle"
                                 ? Variance::covector
                                 : Variance::vector);
    g.pinned = get_vector(require(gj, "pinned", "$.grid"), dim, "$.grid.pinned");
    const json& axes = require(gj, "axes", "$.grid");
    if (!axes.is_array() || axes.empty()) invalid("$.grid.axes", "expected a non-empty array");
    std::set<int> used;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string path = "$.grid.axes[" + std::to_string(i) + "]";
      GridAxis a;
      const std::string coord = get_string(require(axes[i], "coord", path), path + ".coord");
      a.coord = ctx.index_of(coord);
      if (a.coord < 0) invalid(path + ".coord", "'" + coord + "' is not a coordinate of this space");
      if (!used.insert(a.coord).second) invalid(path + ".coord", "axis repeated");
      a.lo = get_number(require(axes[i], "min", path), path + ".min");
      a.hi = get_number(require(axes[i], "max", path), path + ".max");
      a.count = get_int(require(axes[i], "count", path), path + ".count");
      if (a.count < 1 || !(a.lo <= a.hi)) invalid(path, "need count >= 1 and min <= max");
      g.axes.push_back(a);
    }
    const json& cols = require(gj, "columns", "$.grid");
    if (!cols.is_array() || cols.empty()) invalid("$.grid.columns", "expected a non-empty array");
    for (std::size_t i = 0; i < cols.size(); ++i) g.columns.push_back(get_string(cols[i], "$.grid.columns[" + std::to_string(i) + "]"));
    s.grid = g;
  }
  return s;
}

Scenario parse_scenario_text(const std::string& text, double tolerance_scale, std::optional<std::uint64_t> seed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ErrorKind::syntax, e.what(), "$", static_cast<long>(e.byte));
  }
  return parse_scenario(doc, tolerance_scale, seed);
}

std::unique_ptr<GeometrySource> build_space(const Scenario& s) {
  const bool covector =
      s.space == "cartan" || s.space == "hamilton" || s.space == "generalized_hamilton" || s.space == "raw_cvbundle";
  BundleChart chart(s.n, s.m, covector ? Variance::covector : Variance::vector);
  const double margin = s.sampler ? s.sampler->null_margin : -1.0;
  try {
    if (s.space == "finsler")
      return std::make_unique<FinslerSpace>(parse_field(s.function, chart.context, "$.space.F"),
                                            margin >= 0 ? margin : kDefaultNullMargin);
    if (s.space == "lagrange")
      return std::make_unique<LagrangeSpace>(parse_field(s.function, chart.context, "$.space.L"), s.hessian_mode,
                                             margin >= 0 ? margin : 0.0);
    if (s.space == "cartan")
      return std::make_unique<CartanSpace>(parse_field(s.function, chart.context, "$.space.K"),
                                           margin >= 0 ? margin : kDefaultNullMargin);
    if (s.space == "hamilton")
      return std::make_unique<HamiltonSpace>(parse_field(s.function, chart.context, "$.space.H"),
                                             margin >= 0 ? margin : 0.0);
    auto g = parse_matrix(s.g, chart.context, "$.space.g");
    auto N = parse_matrix(s.N, chart.context, "$.space.N");
    if (s.space == "generalized_lagrange") return generalized_lagrange(chart, std::move(g), std::move(N));
    if (s.space == "generalized_hamilton")
      return std::make_unique<GeneralizedHamilton>(chart, std::move(g), std::move(N));
    auto h = parse_matrix(s.h, chart.context, "$.space.h");
    return std::make_unique<RawBundle>(DMetricField(chart, std::move(g), std::move(h)),
                                       NConnectionField(chart, std::move(N)), s.space);
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(e.kind(), e.what(), "$.space");
  }
}

Model build_model(const Scenario& s) {
  Model m;
  m.space = build_space(s);
  const auto& chart = m.space->chart();
  if (!s.base_metric.empty()) m.base_metric = parse_matrix(s.base_metric, chart.context, "$.space.base_metric");
  if (!s.function.empty()) m.expressions.push_back(parse_field(s.function, chart.context, "$.space"));
  for (const auto* block : {&s.g, &s.h, &s.N})
    for (const auto& row : *block)
      for (const auto& cell : row) m.expressions.push_back(parse_field(cell, chart.context, "$.space"));
  for (const auto& p : s.points) m.points.push_back(PointU::from_coords(chart, p));
  if (s.sampler) {
    std::vector<PointU> sampled;
    try {
      sampled = sample_points(*m.space, *s.sampler, &m.sampler_stats);
    } catch (const Error& e) {
      throw ScenarioError(e.kind(), e.what(), "$.sampler");
    }
    m.points.insert(m.points.end(), sampled.begin(), sampled.end());
  }
  return m;
}

}  // namespace anholkit::report
