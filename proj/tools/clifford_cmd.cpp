#include "clifford_cmd.hpp"

#include <cmath>
#include <random>

#include "anholkit/sigma.hpp"
#include "clifford_suite.hpp"
#include "serialize.hpp"

namespace anholkit::cli {

using report::json;

namespace {

json cmatrix(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"re", re}, {"im", im}};
}

json signature_json(const Signature& s) { return {{"p", s.p}, {"q", s.q}}; }

SigmaNormalization normalization(const std::string& s) {
  if (s == "standard") return SigmaNormalization::standard;
  if (s == "paper") return SigmaNormalization::paper;
  fail(ErrorKind::invalid_argument, "normalization must be standard or paper");
}

json rep_json(const SigmaRep& rep) {
  json mats = json::array();
  for (const auto& s : rep.sigma) mats.push_back(cmatrix(s));
  return {{"signature", signature_json(rep.signature)},
          {"spinor_dim", rep.spinor_dim},
          {"normalization", rep.normalization == SigmaNormalization::standard ? "standard" : "paper"},
          {"anticommutation_residual", rep.anticommutator_residual()},
          {"matrices", mats}};
}

std::string blade_name(Blade b) {
  if (b == 0) return "1";
  std::string s;
  for (int i = 0; i < 32; ++i)
    if (b & (Blade{1} << i)) s += "e" + std::to_string(i + 1);
  return s;
}

json multivector_json(const Multivector& u) {
  json out = json::object();
  for (const auto& [b, c] : u.terms())
    if (c != 0.0) out[blade_name(b)] = c;
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.shape()[0]; ++i) {
    json row = json::array();
    for (int j = 0; j < m.shape()[1]; ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

template <class F>
report::CommandOutput guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {2, report::write_json(report::error_body(e)), {}};
  }
}

report::CommandOutput emit(const json& j, bool pass) { return {pass ? 0 : 1, report::write_json(j), {}}; }

}  // namespace

report::CommandOutput clifford_rep(const CliffordArgs& a) {
  return guarded([&] {
    const auto norm = normalization(a.normalization);
    if (a.vp >= 0 || a.vq >= 0) {
      auto d = d_sigma(Signature{a.p, a.q}, Signature{std::max(a.vp, 0), std::max(a.vq, 0)}, norm);
      json mats = json::array();
      for (int al = 0; al < d.n() + d.m(); ++al) mats.push_back(cmatrix(d.sigma(al)));
      return emit({{"h", rep_json(d.h)}, {"v", rep_json(d.v)}, {"spinor_dim", d.spinor_dim()}, {"matrices", mats}},
                  true);
    }
    return emit(rep_json(matrix_rep(Signature{a.p, a.q}, norm)), true);
  });
}

report::CommandOutput clifford_check(const CliffordArgs& a) {
  return guarded([&] {
    const Signature sig{a.p, a.q};
    sig.validate(kMaxRepDim);
    std::mt19937_64 rng(a.seed);
    const auto s = verify::clifford_suite(sig, rng, 10);
    const int expected_dim = spinor_dimension(sig.dim());
    const double t = a.tolerance_scale;
    json suites = json::array();
    bool all = true;
    auto add = [&](const char* name, double measured, double tol) {
      const bool ok = std::isfinite(measured) && measured <= tol * t;
      all = all && ok;
      suites.push_back({{"suite", name}, {"residual", measured}, {"tolerance", tol * t}, {"pass", ok}});
    };
    add("anticommutation", s.anticommutation, 1e-12);
    add("homomorphism", s.homomorphism, 1e-10);
    add("blade_orthonormality", s.blade_orthonormality, 1e-10);
    add("spinor_norm", s.spinor_norm, 1e-9);
    add("spin_orthogonality", s.orthogonality, 1e-9);
    add("spin_determinant", s.determinant, 1e-9);
    add("double_cover", s.double_cover, 1e-9);
    const bool dim_ok = s.spinor_dim == expected_dim;
    all = all && dim_ok;
    return emit({{"signature", signature_json(sig)},
                 {"spinor_dim", s.spinor_dim},
                 {"expected_spinor_dim", expected_dim},
                 {"suites", suites},
                 {"pass", all}},
                all);
  });
}

report::CommandOutput clifford_epsilon(const CliffordArgs& a) {
  return guarded([&] {
    const auto rep = matrix_rep(Signature{a.p, a.q}, normalization(a.normalization));
    json objects = json::array();
    for (int sign : {1, -1}) {
      const auto e = epsilon_objects(rep, sign);
      json o = {{"sign", sign}, {"vanishing", e.vanishing}, {"residual", e.residual}, {"rank_gap", e.rank_gap}};
      if (!e.vanishing) {
        o["scale"] = {e.scale.real(), e.scale.imag()};
        o["symmetry"] = e.symmetry;
        o["eps_up"] = cmatrix(e.eps_up);
        o["eps_low"] = cmatrix(e.eps_low);
      }
      objects.push_back(o);
    }
    const auto def = default_epsilon(rep);
    bool all = def.residual <= 1e-9 * a.tolerance_scale;
    json classes = json::array();
    for (int q = 0; q <= rep.signature.dim(); ++q) {
      const auto c = sigma_symmetry_check(rep, def, q);
      all = all && c.pass;
      classes.push_back({{"q", c.q},
                         {"residue", c.residue},
                         {"expected", c.expected},
                         {"observed", c.observed},
                         {"chirality", c.chirality},
                         {"expected_chirality", c.expected_chirality},
                         {"residual", c.residual},
                         {"pass", c.pass}});
    }
    return emit({{"signature", signature_json(rep.signature)},
                 {"spinor_dim", rep.spinor_dim},
                 {"default_sign", def.sign},
                 {"objects", objects},
                 {"classes", classes},
                 {"pass", all}},
                all);
  });
}

report::CommandOutput clifford_spin_demo(const CliffordArgs& a) {
  return guarded([&] {
    const Signature sig{a.p, a.q};
    sig.validate();
    const int i = a.plane_a - 1, j = a.plane_b - 1;
    if (i < 0 || j < 0 || i >= sig.dim() || j >= sig.dim() || i == j)
      fail(ErrorKind::invalid_argument, "--plane needs two distinct generators in 1.." + std::to_string(sig.dim()));
    const Multivector B = Multivector::generator(sig, i) * Multivector::generator(sig, j);
    // (e_i e_j)^2 = -e_i^2 e_j^2 decides between a rotation and a boost.
    const double b2 = (B * B).scalar_part();
    const double h = 0.5 * a.angle;
    const Multivector u = b2 < 0 ? Multivector::scalar(sig, std::cos(h)) + B * std::sin(h)
                                 : Multivector::scalar(sig, std::cosh(h)) + B * std::sinh(h);
    const auto plus = twisted_group_check(u), minus = twisted_group_check(u * -1.0);
    double cover = 0.0;
    for (std::size_t k = 0; k < plus.rho.size(); ++k)
      cover = std::max(cover, std::abs(plus.rho.data()[k] - minus.rho.data()[k]));
    return emit({{"signature", signature_json(sig)},
                 {"plane", {a.plane_a, a.plane_b}},
                 {"angle", a.angle},
                 {"kind", b2 < 0 ? "rotation" : "boost"},
                 {"rotor", multivector_json(u)},
                 {"rho", matrix_json(plus.rho)},
                 {"orthogonality_residual", plus.orthogonality_residual},
                 {"det", plus.det},
                 {"rho_u_minus_rho_neg_u", cover}},
                true);
  });
}

}  // namespace anholkit::cli
