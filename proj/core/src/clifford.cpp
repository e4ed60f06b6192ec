#include "anholkit/clifford.hpp"

#include <bit>
#include <cmath>

namespace anholkit {

void Signature::validate(int cap) const {
  if (p < 0 || q < 0 || p + q < 1) fail(ErrorKind::unsupported_signature, "signature needs p, q >= 0 and p + q >= 1");
  if (p + q > cap)
    fail(ErrorKind::unsupported_dimension, "p + q = " + std::to_string(p + q) + " exceeds the cap " + std::to_string(cap));
}

int grade(Blade b) { return std::popcount(b); }

double blade_sign(Blade a, Blade b, const Signature& sig) {
  int swaps = 0;
  Blade x = a >> 1;
  while (x) {
    swaps += std::popcount(x & b);
    x >>= 1;
  }
  double s = (swaps & 1) ? -1.0 : 1.0;
  Blade common = a & b;
  for (int g = 0; common; ++g, common >>= 1)
    if (common & 1U) s *= sig.square(g);
  return s;
}

Multivector Multivector::scalar(Signature sig, double s) {
  Multivector m(sig);
  m.set(0, s);
  return m;
}

Multivector Multivector::generator(Signature sig, int gen, double coeff) {
  Multivector m(sig);
  if (gen < 0 || gen >= sig.dim()) fail(ErrorKind::invalid_argument, "generator index out of range");
  m.set(Blade{1} << gen, coeff);
  return m;
}

Multivector Multivector::vector(Signature sig, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != sig.dim()) fail(ErrorKind::dimension_mismatch, "vector length");
  Multivector m(sig);
  for (int g = 0; g < sig.dim(); ++g) m.set(Blade{1} << g, v[static_cast<std::size_t>(g)]);
  return m;
}

double Multivector::coeff(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? 0.0 : it->second;
}

void Multivector::set(Blade b, double v) {
  if (v == 0.0)
    terms_.erase(b);
  else
    terms_[b] = v;
}

void Multivector::add(Blade b, double v) { set(b, coeff(b) + v); }

double Multivector::off_grade(int g) const {
  double r = 0.0;
  for (const auto& [b, v] : terms_)
    if (grade(b) != g) r = std::max(r, std::fabs(v));
  return r;
}

double Multivector::norm() const {
  double s = 0.0;
  for (const auto& [b, v] : terms_) s += v * v;
  return std::sqrt(s);
}

namespace {

void same_sig(const Signature& a, const Signature& b) {
  if (a.p != b.p || a.q != b.q) fail(ErrorKind::unsupported_signature, "multivectors from different algebras");
}

}  // namespace

Multivector Multivector::operator+(const Multivector& o) const {
  same_sig(sig_, o.sig_);
  Multivector r = *this;
  for (const auto& [b, v] : o.terms_) r.add(b, v);
  return r;
}

Multivector Multivector::operator-(const Multivector& o) const { return *this + o * -1.0; }

Multivector Multivector::operator*(const Multivector& o) const {
  same_sig(sig_, o.sig_);
  Multivector r(sig_);
  for (const auto& [a, va] : terms_)
    for (const auto& [b, vb] : o.terms_) r.terms_[a ^ b] += blade_sign(a, b, sig_) * va * vb;
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = it->second == 0.0 ? r.terms_.erase(it) : std::next(it);
  return r;
}

Multivector Multivector::operator*(double s) const {
  Multivector r(sig_);
  for (const auto& [b, v] : terms_) r.set(b, v * s);
  return r;
}

Multivector reversion(const Multivector& u) {
  Multivector r(u.signature());
  for (const auto& [b, v] : u.terms()) {
    const int k = grade(b);
    r.set(b, ((k * (k - 1) / 2) % 2) ? -v : v);
  }
  return r;
}

Multivector grade_involution(const Multivector& u) {
  Multivector r(u.signature());
  for (const auto& [b, v] : u.terms()) r.set(b, (grade(b) % 2) ? -v : v);
  return r;
}

Multivector conjugate(const Multivector& u) { return reversion(grade_involution(u)); }

Multivector spinor_norm(const Multivector& u) { return conjugate(u) * u; }

Multivector inverse(const Multivector& u) {
  const Signature& sig = u.signature();
  const double scale = std::max(u.norm(), 1e-300);
  Multivector s = spinor_norm(u);
  if (s.off_grade(0) <= 1e-12 * scale * scale && std::fabs(s.scalar_part()) > 1e-14 * scale * scale) {
    Multivector inv = conjugate(u) * (1.0 / s.scalar_part());
    Multivector check = u * inv;
    if (check.off_grade(0) <= 1e-10 && std::fabs(check.scalar_part() - 1.0) <= 1e-10) return inv;
  }
  // General case: solve u * v = 1 over the dense blade basis.
  const int d = sig.dim();
  if (d > kMaxRepDim) fail(ErrorKind::non_invertible, "general inverse limited to p + q <= 10");
  const int N = 1 << d;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (const auto& [a, va] : u.terms())
    for (int b = 0; b < N; ++b) M(static_cast<int>(a ^ static_cast<Blade>(b)), b) += blade_sign(a, static_cast<Blade>(b), sig) * va;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) fail(ErrorKind::non_invertible, "multivector is not invertible");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  rhs(0) = 1.0;
  Eigen::VectorXd x = lu.solve(rhs);
  Multivector inv(sig);
  for (int b = 0; b < N; ++b)
    if (std::fabs(x(b)) > 1e-15) inv.set(static_cast<Blade>(b), x(b));
  return inv;
}

TwistedReport twisted_group_check(const Multivector& u, double threshold) {
  const Signature& sig = u.signature();
  const int d = sig.dim();
  TwistedReport r;
  Multivector ui = inverse(u);
  Multivector ub = grade_involution(u);
  r.rho = Matrix({d, d}, 0.0);
  for (int a = 0; a < d; ++a) {
    Multivector img = ub * Multivector::generator(sig, a) * ui;
    r.off_grade = std::max(r.off_grade, img.off_grade(1));
    for (int b = 0; b < d; ++b) r.rho(b, a) = img.coeff(Blade{1} << b);
  }
  r.member = r.off_grade <= threshold;
  double res = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int c = 0; c < d; ++c) s += r.rho(c, a) * sig.square(c) * r.rho(c, b);
      res = std::max(res, std::fabs(s - (a == b ? sig.square(a) : 0.0)));
    }
  r.orthogonality_residual = res;
  r.orthogonal = res <= 1e-9;
  Eigen::MatrixXd e(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) e(a, b) = r.rho(a, b);
  r.det = e.determinant();
  return r;
}

}  // namespace anholkit
