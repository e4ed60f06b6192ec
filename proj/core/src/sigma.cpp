#include "anholkit/sigma.hpp"

#include <cmath>

namespace anholkit {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

CMatrix pauli(int which) {
  CMatrix m(2, 2);
  const cd I(0, 1);
  switch (which) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Hermitian, anticommuting, squaring to I.
std::vector<CMatrix> euclidean_gammas(int n) {
  const int k = n / 2;
  std::vector<CMatrix> out;
  auto string_of = [&](int pos, int which) {
    CMatrix m = CMatrix::Identity(1, 1);
    for (int j = 0; j < k; ++j) m = kron(m, j < pos ? pauli(3) : (j == pos ? pauli(which) : pauli(0)));
    return m;
  };
  for (int j = 0; j < k; ++j) {
    out.push_back(string_of(j, 1));
    out.push_back(string_of(j, 2));
  }
  if (n % 2 == 1) out.push_back(string_of(k, 0));
  return out;
}

double fro(const CMatrix& m) { return m.norm(); }

void fix_phase(CMatrix& m) {
  for (int i = 0; i < m.size(); ++i) {
    cd v = m.data()[i];
    if (std::abs(v) > 1e-8 * m.norm()) {
      m *= std::conj(v) / std::abs(v);
      return;
    }
  }
}

CMatrix blade_matrix(const std::vector<CMatrix>& s, const std::vector<int>& idx, int N) {
  CMatrix m = CMatrix::Identity(N, N);
  for (int a : idx) m = m * s[static_cast<std::size_t>(a)];
  return m;
}

void subsets(int n, int q, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == q) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, q, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int n, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(n, q, 0, cur, out);
  return out;
}

int classify(const CMatrix& B, double tol) {
  const double s = std::max(fro(B), 1e-300);
  if (fro(B - B.transpose()) <= tol * s) return 1;
  if (fro(B + B.transpose()) <= tol * s) return -1;
  return 0;
}

}  // namespace

int spinor_dimension(int n) { return 1 << (n / 2); }

double SigmaRep::anticommutator_residual() const {
  const int d = signature.dim();
  double r = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMatrix ac = sigma[static_cast<std::size_t>(a)] * sigma[static_cast<std::size_t>(b)] +
                   sigma[static_cast<std::size_t>(b)] * sigma[static_cast<std::size_t>(a)];
      if (a == b) ac -= CMatrix::Identity(spinor_dim, spinor_dim) * (kappa() * frame_metric(a));
      r = std::max(r, ac.cwiseAbs().maxCoeff());
    }
  return r;
}

SigmaRep matrix_rep(Signature sig, SigmaNormalization norm) {
  sig.validate(kMaxRepDim);
  SigmaRep rep;
  rep.signature = sig;
  rep.normalization = norm;
  rep.spinor_dim = spinor_dimension(sig.dim());
  auto g = euclidean_gammas(sig.dim());
  const double s = norm == SigmaNormalization::standard ? 1.0 : 1.0 / std::sqrt(2.0);
  for (int a = 0; a < sig.dim(); ++a) {
    CMatrix m = g[static_cast<std::size_t>(a)];
    if (sig.square(a) < 0) m *= cd(0, 1);
    rep.sigma.push_back(m * s);
  }
  return rep;
}

CMatrix to_matrix(const Multivector& u, const SigmaRep& rep) {
  if (u.signature().p != rep.signature.p || u.signature().q != rep.signature.q)
    fail(ErrorKind::unsupported_signature, "multivector and representation signatures differ");
  const double s = std::sqrt(-2.0 / rep.kappa());
  const int N = rep.spinor_dim;
  CMatrix out = CMatrix::Zero(N, N);
  for (const auto& [b, v] : u.terms()) {
    CMatrix m = CMatrix::Identity(N, N);
    for (int g = 0; g < rep.signature.dim(); ++g)
      if (b & (Blade{1} << g)) m = m * (rep.sigma[static_cast<std::size_t>(g)] * s);
    out += v * m;
  }
  return out;
}

CMatrix DSigmaRep::sigma(int alpha) const {
  const int N = spinor_dim();
  CMatrix out = CMatrix::Zero(N, N);
  if (alpha < n())
    out.topLeftCorner(h.spinor_dim, h.spinor_dim) = h.sigma[static_cast<std::size_t>(alpha)];
  else
    out.bottomRightCorner(v.spinor_dim, v.spinor_dim) = v.sigma[static_cast<std::size_t>(alpha - n())];
  return out;
}

double DSigmaRep::frame_metric(int alpha) const {
  return alpha < n() ? h.frame_metric(alpha) : v.frame_metric(alpha - n());
}

DSigmaRep d_sigma(Signature hs, Signature vs, SigmaNormalization norm) {
  return DSigmaRep{matrix_rep(hs, norm), matrix_rep(vs, norm)};
}

EpsilonObjects epsilon_objects(const SigmaRep& rep, int sign) {
  const int n = rep.signature.dim();
  if (n > 8) fail(ErrorKind::unsupported_dimension, "epsilon objects are built for n <= 8");
  const int N = rep.spinor_dim;
  const double w = 2.0 / (-rep.kappa());
  EpsilonObjects e;
  e.n = n;
  e.sign = sign;
  e.E = CMatrix::Zero(N * N, N * N);
  for (int q = 0; q <= n; ++q) {
    const double weight = std::pow(sign * w, q);
    for (const auto& A : subsets(n, q)) {
      CMatrix lo = blade_matrix(rep.sigma, A, N);
      CMatrix up = lo;
      for (int a : A) up *= rep.frame_metric(a);
      for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i) {
          if (lo(k, i) == cd(0)) continue;
          for (int m = 0; m < N; ++m)
            for (int j = 0; j < N; ++j) e.E(k * N + m, i * N + j) += weight * lo(k, i) * up(m, j);
        }
    }
  }
  const double norm = e.E.norm();
  if (norm < 1e-10) {
    e.vanishing = true;
    return e;
  }
  Eigen::JacobiSVD<CMatrix> svd(e.E, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  e.rank_gap = s.size() > 1 ? s(1) / s(0) : 0.0;
  e.eps_low = CMatrix(N, N);
  e.eps_up = CMatrix(N, N);
  for (int k = 0; k < N; ++k)
    for (int m = 0; m < N; ++m) {
      e.eps_low(k, m) = svd.matrixU()(k * N + m, 0);
      e.eps_up(k, m) = std::conj(svd.matrixV()(k * N + m, 0));
    }
  e.eps_low *= std::sqrt(static_cast<double>(N)) / e.eps_low.norm();
  e.eps_up *= std::sqrt(static_cast<double>(N)) / e.eps_up.norm();
  fix_phase(e.eps_low);
  fix_phase(e.eps_up);
  CMatrix outer(N * N, N * N);
  for (int r = 0; r < N * N; ++r)
    for (int c = 0; c < N * N; ++c) outer(r, c) = e.eps_low(r / N, r % N) * e.eps_up(c / N, c % N);
  e.scale = (outer.adjoint() * e.E).trace() / outer.squaredNorm();
  e.residual = (e.E - e.scale * outer).cwiseAbs().maxCoeff();
  e.symmetry = classify(e.eps_up, 1e-9);
  return e;
}

EpsilonObjects default_epsilon(const SigmaRep& rep) {
  EpsilonObjects plus = epsilon_objects(rep, 1);
  if (!plus.vanishing) return plus;
  EpsilonObjects minus = epsilon_objects(rep, -1);
  if (minus.vanishing) fail(ErrorKind::factorization_failure, "both epsilon candidates vanish");
  return minus;
}

SymmetryEntry sigma_symmetry_check(const SigmaRep& rep, const EpsilonObjects& eps, int q) {
  const int n = rep.signature.dim();
  const int N = rep.spinor_dim;
  if (q < 0 || q > n) fail(ErrorKind::invalid_argument, "q out of range");
  if (eps.vanishing) fail(ErrorKind::factorization_failure, "epsilon object vanishes");
  SymmetryEntry r;
  r.q = q;
  r.residue = (((n - 2 * q) % 8) + 8) % 8;
  const bool definite = rep.signature.q == 0;
  if (n % 2 == 1) {
    r.expected = (r.residue == 1 || r.residue == 7) ? 1 : -1;
    r.expected_chirality = "-";
  } else if (r.residue == 0 || r.residue == 4) {
    r.expected = r.residue == 0 ? 1 : -1;
    r.expected_chirality = "diag";
  } else {
    const int plus_residue = (((n + 2 * q) % 8) + 8) % 8;
    r.expected = (plus_residue == 6 ? 1 : -1) * eps.sign;
    r.expected_chirality = "off";
  }
  if (!definite) r.expected = 0;

  CMatrix chir = CMatrix::Identity(N, N);
  if (n % 2 == 0) {
    for (const auto& s : rep.sigma) chir = chir * s;
    cd c = (chir * chir)(0, 0);
    chir /= std::sqrt(c);
  }
  CMatrix Pp = 0.5 * (CMatrix::Identity(N, N) + chir), Pm = 0.5 * (CMatrix::Identity(N, N) - chir);

  int observed = 2;
  std::string chirality = n % 2 == 1 ? "-" : "";
  double residual = 0.0;
  for (const auto& A : subsets(n, q)) {
    CMatrix B = eps.eps_up * blade_matrix(rep.sigma, A, N);
    const double bn = std::max(fro(B), 1e-300);
    int c = classify(B, 1e-9);
    residual = std::max(residual, std::min(fro(B - B.transpose()), fro(B + B.transpose())) / bn);
    if (observed == 2)
      observed = c;
    else if (observed != c)
      observed = 0;
    if (n % 2 == 0) {
      const double d = fro(Pp * B * Pp.transpose()) + fro(Pm * B * Pm.transpose());
      const double o = fro(Pp * B * Pm.transpose()) + fro(Pm * B * Pp.transpose());
      std::string ch = o <= 1e-9 * bn ? "diag" : (d <= 1e-9 * bn ? "off" : "mixed");
      if (chirality.empty())
        chirality = ch;
      else if (chirality != ch)
        chirality = "mixed";
    }
  }
  r.observed = observed == 2 ? 0 : observed;
  r.chirality = chirality;
  r.residual = residual;
  r.pass = r.observed != 0 && (r.expected == 0 || r.observed == r.expected) &&
           (!definite || r.chirality == r.expected_chirality);
  return r;
}

namespace {

CMatrix block_eps(const DSigmaRep& rep, const CMatrix& eps_up) {
  if (eps_up.rows() != rep.spinor_dim()) fail(ErrorKind::shape_mismatch, "epsilon size");
  return eps_up;
}

}  // namespace

CMatrix tensor_to_spinor(const std::vector<cd>& w, const DSigmaRep& rep, const CMatrix& eps_up) {
  const int D = rep.n() + rep.m();
  if (static_cast<int>(w.size()) != D) fail(ErrorKind::shape_mismatch, "tensor length");
  CMatrix e = block_eps(rep, eps_up);
  CMatrix W = CMatrix::Zero(rep.spinor_dim(), rep.spinor_dim());
  for (int a = 0; a < D; ++a) W += w[static_cast<std::size_t>(a)] * rep.frame_metric(a) * (e * rep.sigma(a));
  return W;
}

std::vector<cd> spinor_to_tensor(const CMatrix& W, const DSigmaRep& rep, const CMatrix& eps_up) {
  const int D = rep.n() + rep.m();
  CMatrix e = block_eps(rep, eps_up);
  CMatrix M = e.fullPivLu().solve(W);
  std::vector<cd> w(static_cast<std::size_t>(D));
  for (int a = 0; a < D; ++a)
    w[static_cast<std::size_t>(a)] = (rep.sigma(a) * M).trace() / (0.5 * rep.kappa() * rep.block_dim(a));
  return w;
}

Matrix metric_reconstruction(const std::vector<CMatrix>& sigma_u, const DSigmaRep& rep, const EpsilonObjects& eps_h,
                             const EpsilonObjects& eps_v) {
  const int D = rep.n() + rep.m();
  if (static_cast<int>(sigma_u.size()) != D) fail(ErrorKind::shape_mismatch, "one sigma matrix per index");
  const int Nh = rep.h.spinor_dim, N = rep.spinor_dim();
  CMatrix up = CMatrix::Zero(N, N);
  up.topLeftCorner(Nh, Nh) = eps_h.eps_up;
  up.bottomRightCorner(N - Nh, N - Nh) = eps_v.eps_up;
  CMatrix lo = up.inverse().transpose();  // eps^{ij} eps_kj = delta
  Matrix g({D, D}, 0.0);
  for (int a = 0; a < D; ++a)
    for (int b = a; b < D; ++b) {
      CMatrix Ua = up * sigma_u[static_cast<std::size_t>(a)];
      CMatrix Ub = up * sigma_u[static_cast<std::size_t>(b)];
      // sum Ua^{ab} Ub^{dc} eps_ac eps_bd, symmetrized
      cd c1 = (Ua.transpose() * lo * Ub.transpose() * lo.transpose()).trace();
      cd c2 = (Ub.transpose() * lo * Ua.transpose() * lo.transpose()).trace();
      const cd contraction = 0.5 * (c1 + c2);
      const bool hh = a < rep.n(), bh = b < rep.n();
      double value = 0.0;
      if (hh == bh) {
        const EpsilonObjects& e = hh ? eps_h : eps_v;
        const double nb = hh ? rep.h.spinor_dim : rep.v.spinor_dim;
        value = (2.0 / (e.symmetry * rep.kappa() * nb) * contraction).real();
      } else {
        value = contraction.real();
      }
      g(a, b) = value;
      g(b, a) = value;
    }
  return g;
}

FundamentalReport fundamental_spinor_check(const CVector& xi, const SigmaRep& rep, const EpsilonObjects& eps,
                                           double tol) {
  const int n = rep.signature.dim(), N = rep.spinor_dim;
  if (xi.size() != N) fail(ErrorKind::shape_mismatch, "spinor length");
  CMatrix lo = eps.eps_up.inverse().transpose();
  FundamentalReport r;
  const double scale = std::max(xi.squaredNorm(), 1e-300);
  r.fundamental = true;
  for (int q = 0; q <= n; ++q) {
    double b = 0.0;
    bool sym = true;
    for (const auto& A : subsets(n, q)) {
      CMatrix L = lo * blade_matrix(rep.sigma, A, N).transpose();
      b = std::max(b, std::abs((xi.transpose() * L * xi)(0, 0)));
      if (classify(L, 1e-9) != 1) sym = false;
    }
    const bool win = (n % 2 == 1) ? (2 * q == n - 1 || 2 * q == n + 1) : (2 * q == n);
    r.bilinear.push_back(b);
    r.allowed.push_back(sym);
    r.window.push_back(win);
    if (!win && b > tol * scale) r.fundamental = false;
  }
  return r;
}

double twistor_residual(const SpinorField& omega, const DSigmaRep& rep, const std::vector<double>& u, double step) {
  const int D = rep.n() + rep.m();
  if (static_cast<int>(u.size()) != D) fail(ErrorKind::dimension_mismatch, "point length");
  std::vector<CVector> dw(static_cast<std::size_t>(D));
  for (int b = 0; b < D; ++b) {
    auto up = u, dn = u;
    up[static_cast<std::size_t>(b)] += step;
    dn[static_cast<std::size_t>(b)] -= step;
    dw[static_cast<std::size_t>(b)] = (omega(up) - omega(dn)) / (2 * step);
  }
  auto T = [&](int a, int b) -> CVector { return rep.sigma(a).transpose() * dw[static_cast<std::size_t>(b)]; };
  const int N = rep.spinor_dim();
  CVector trace_h = CVector::Zero(N), trace_v = CVector::Zero(N);
  for (int r = 0; r < D; ++r) (r < rep.n() ? trace_h : trace_v) += rep.frame_metric(r) * T(r, r);
  double res = 0.0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b) {
      CVector s = 0.5 * (T(a, b) + T(b, a));
      if (a == b) s -= rep.frame_metric(a) * (a < rep.n() ? trace_h / rep.n() : trace_v / rep.m());
      res = std::max(res, s.cwiseAbs().maxCoeff());
    }
  return res;
}

SpinorField twistor_solution(const DSigmaRep& rep, const CVector& Omega, const CVector& Pi) {
  return [rep, Omega, Pi](const std::vector<double>& u) {
    CVector w = Omega;
    for (std::size_t a = 0; a < u.size(); ++a) w += u[a] * (rep.sigma(static_cast<int>(a)).transpose() * Pi);
    return w;
  };
}

}  // namespace anholkit
