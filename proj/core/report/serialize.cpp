#include "serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace anholkit::report {
namespace {

void write(const json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // numeric rows stay on one line
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ',';
        if (flat && !first && indent >= 0) out += ' ';
        first = false;
        if (!flat) newline(depth + 1);
        write(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: out += format_number(v.get<double>()); return;
    default: out += v.dump(); return;
  }
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string write_json(const json& v, int indent) {
  std::string out;
  write(v, indent, 0, out);
  if (indent >= 0) out += '\n';
  return out;
}

json to_json(const NdArray<double>& a) {
  if (a.rank() == 0) return a.data()[0];
  // nested arrays, innermost index last
  std::function<json(int, std::size_t)> rec = [&](int axis, std::size_t offset) -> json {
    json arr = json::array();
    std::size_t stride = 1;
    for (int k = axis + 1; k < a.rank(); ++k) stride *= static_cast<std::size_t>(a.extent(k));
    for (int i = 0; i < a.extent(axis); ++i) {
      const std::size_t off = offset + static_cast<std::size_t>(i) * stride;
      if (axis + 1 == a.rank())
        arr.push_back(a.data()[off]);
      else
        arr.push_back(rec(axis + 1, off));
    }
    return arr;
  };
  return rec(0, 0);
}

json report_to_json(const Report& r, bool timing) {
  json j;
  j["version"] = kVersion;
  j["scenario"] = {{"name", r.name}, {"hash", r.hash}, {"space", r.space}, {"n", r.n},
                   {"m", r.m},       {"connection", r.connection}, {"seed", r.seed}};
  if (r.sampled)
    j["sampler"] = {{"attempts", r.sampler.attempts},
                    {"rejected_margin", r.sampler.rejected_margin},
                    {"rejected_metric", r.sampler.rejected_metric}};
  json points = json::array();
  for (const auto& p : r.points) {
    json pj;
    pj["index"] = p.index;
    pj["coords"] = p.coords;
    pj["status"] = p.ok && p.error.empty() ? "ok" : "error";
    if (!p.error.empty()) pj["error"] = p.error;
    if (!p.blocks.empty()) {
      json fields;
      for (const auto& [name, arr] : p.blocks) fields[name] = to_json(arr);
      pj["fields"] = fields;
    }
    points.push_back(pj);
  }
  j["points"] = points;
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["check"] = c.spec.text;
    cj["name"] = c.spec.name;
    if (c.spec.expected) cj["expected"] = *c.spec.expected;
    cj["tolerance"] = c.spec.tolerance;
    cj["max_residual"] = c.max_residual;
    cj["mean_residual"] = c.mean_residual;
    cj["evaluated_points"] = c.evaluated;
    cj["failed_points"] = c.failed_points;
    cj["pass"] = c.pass;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["pass"] = r.pass;
  if (timing) j["timing"] = {{"total_ms", r.elapsed_ms}, {"jobs", r.jobs}};
  return j;
}

json error_body(const Error& e) {
  json err;
  err["kind"] = to_string(e.kind());
  err["message"] = e.what();
  if (const auto* se = dynamic_cast<const ScenarioError*>(&e)) {
    err["path"] = se->path();
    if (se->offset() >= 0) err["offset"] = se->offset();
  } else if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["offset"] = pe->offset();
  }
  return json{{"error", err}};
}

}  // namespace anholkit::report
