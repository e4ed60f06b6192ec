#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anholkit/expr.hpp"

namespace anholkit {

inline constexpr int kMaxJetOrder = 6;

using MultiIndex = std::vector<int>;

// Graded ordering of multi-indices for a fixed variable count and order cap.
// Coefficients of all orders below k come first, so lower-order jets are prefixes.
class JetLayout {
 public:
  struct Term {
    std::uint32_t a, b, r;
  };

  static const JetLayout& get(int nvars, int max_order);

  int nvars() const { return nvars_; }
  int max_order() const { return max_order_; }
  std::size_t count(int order) const { return counts_[static_cast<std::size_t>(order)]; }
  std::span<const int> index(std::size_t r) const {
    return {indices_.data() + r * static_cast<std::size_t>(nvars_), static_cast<std::size_t>(nvars_)};
  }
  int degree(std::size_t r) const { return degrees_[r]; }
  std::size_t rank(std::span<const int> alpha) const;
  // Products contributing to a jet of the given order.
  std::span<const Term> products(int order) const {
    return {terms_.data(), term_ends_[static_cast<std::size_t>(order)]};
  }
  // src[r] = rank(index(r) + e_v), for r < count(max_order - 1).
  std::span<const std::uint32_t> shift(int v) const {
    return {shift_.data() + static_cast<std::size_t>(v) * counts_[static_cast<std::size_t>(max_order_ > 0 ? max_order_ - 1 : 0)],
            counts_[static_cast<std::size_t>(max_order_ > 0 ? max_order_ - 1 : 0)]};
  }

 private:
  JetLayout(int nvars, int max_order);

  int nvars_;
  int max_order_;
  std::vector<std::size_t> counts_;
  std::vector<int> indices_;
  std::vector<int> degrees_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> key_rank_;
  std::vector<Term> terms_;
  std::vector<std::size_t> term_ends_;
  std::vector<std::uint32_t> shift_;

  std::uint64_t key(std::span<const int> alpha) const;
};

// Truncated multivariate Taylor polynomial: c[r] = d^alpha f / alpha! at the expansion point.
class Jet {
 public:
  Jet() = default;
  Jet(const JetLayout& layout, int order, double value);

  static Jet constant(const JetLayout& layout, int order, double value) { return Jet(layout, order, value); }
  static Jet variable(const JetLayout& layout, int order, int var, double value);

  const JetLayout& layout() const { return *layout_; }
  bool valid() const { return layout_ != nullptr; }
  int order() const { return order_; }
  double value() const { return c_[0]; }
  std::span<const double> coeffs() const { return c_; }
  std::span<double> coeffs() { return c_; }
  double coeff(std::size_t r) const { return c_[r]; }

  // Partial derivative in variable v; the result has one order less.
  Jet derivative(int v) const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

 private:
  const JetLayout* layout_ = nullptr;
  int order_ = 0;
  std::vector<double> c_;

  friend Jet compose(const Jet& a, std::span<const double> taylor);
};

// sum_k taylor[k] (a - a0)^k, with taylor.size() > a.order().
Jet compose(const Jet& a, std::span<const double> taylor);

Jet reciprocal(const Jet& a);
Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet abs(const Jet& a);
Jet pow(const Jet& a, double exponent);

// d^alpha f at the expansion point (alpha! c_alpha).
double extract_partial(const Jet& j, std::span<const int> alpha);
double extract_partial(const Jet& j, std::initializer_list<int> alpha);

// Seeds every coordinate of a point as a jet variable.
std::vector<Jet> seed(std::span<const double> point, int order);

template <>
struct Carrier<Jet> {
  static Jet constant(const Jet& like, double v) { return Jet(like.layout(), like.order(), v); }
  static double value(const Jet& a) { return a.value(); }
  static Jet divide(const Jet& a, const Jet& b) { return a / b; }
  static Jet sqrt(const Jet& a) { return anholkit::sqrt(a); }
  static Jet exp(const Jet& a) { return anholkit::exp(a); }
  static Jet log(const Jet& a) { return anholkit::log(a); }
  static Jet sin(const Jet& a) { return anholkit::sin(a); }
  static Jet cos(const Jet& a) { return anholkit::cos(a); }
  static Jet tan(const Jet& a) { return anholkit::tan(a); }
  static Jet abs(const Jet& a) { return anholkit::abs(a); }
};

}  // namespace anholkit
