#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "anholkit/linalg.hpp"

namespace anholkit {

inline constexpr int kMaxCliffordDim = 12;
inline constexpr int kMaxRepDim = 10;

// Generators e_1..e_p square to -1, e_{p+1}..e_{p+q} to +1.
struct Signature {
  int p = 0;
  int q = 0;
  int dim() const { return p + q; }
  double square(int gen) const { return gen < p ? -1.0 : 1.0; }
  void validate(int cap = kMaxCliffordDim) const;
};

using Blade = std::uint32_t;

class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(Signature sig) : sig_(sig) { sig_.validate(); }

  static Multivector scalar(Signature sig, double s);
  static Multivector generator(Signature sig, int gen, double coeff = 1.0);
  static Multivector vector(Signature sig, const std::vector<double>& v);

  const Signature& signature() const { return sig_; }
  const std::map<Blade, double>& terms() const { return terms_; }
  double coeff(Blade b) const;
  void set(Blade b, double v);
  void add(Blade b, double v);

  // Largest absolute coefficient in blades outside the given grade.
  double off_grade(int grade) const;
  double norm() const;
  double scalar_part() const { return coeff(0); }

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator*(const Multivector& o) const;
  Multivector operator*(double s) const;

 private:
  Signature sig_;
  std::map<Blade, double> terms_;
};

// Sign of e_A e_B = sign * e_{A xor B}.
double blade_sign(Blade a, Blade b, const Signature& sig);
int grade(Blade b);

Multivector reversion(const Multivector& u);
Multivector grade_involution(const Multivector& u);
// The conjugate used in the twisted action: reversion of the grade involution.
Multivector conjugate(const Multivector& u);
// S(u) = conj(u) u.
Multivector spinor_norm(const Multivector& u);
Multivector inverse(const Multivector& u);

struct TwistedReport {
  bool member = false;
  double off_grade = 0.0;
  Matrix rho;  // column a holds conj(u) e_a u^-1 in the generator basis
  bool orthogonal = false;
  double orthogonality_residual = 0.0;  // |rho^T Q rho - Q|
  double det = 0.0;
};

inline constexpr double kOffGradeThreshold = 1e-10;

TwistedReport twisted_group_check(const Multivector& u, double threshold = kOffGradeThreshold);

}  // namespace anholkit
