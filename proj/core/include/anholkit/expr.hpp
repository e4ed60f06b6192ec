#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anholkit/error.hpp"

namespace anholkit {

enum class Variance { vector, covector };

// Variable names of a chart: x1..xn then y1..ym (vector) or p1..pm (covector).
class VarContext {
 public:
  VarContext() = default;
  VarContext(int n, int m, Variance variance);

  int n() const { return n_; }
  int m() const { return m_; }
  Variance variance() const { return variance_; }
  int size() const { return n_ + m_; }
  const std::string& name(int index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }
  // -1 when the name is not part of the chart.
  int index_of(std::string_view name) const;
  char fiber_letter() const { return variance_ == Variance::vector ? 'y' : 'p'; }

  bool operator==(const VarContext& other) const = default;

 private:
  int n_ = 0;
  int m_ = 0;
  Variance variance_ = Variance::vector;
  std::vector<std::string> names_;
};

enum class Op { constant, variable, neg, add, sub, mul, div, pow, call };
enum class Func { sqrt, exp, log, sin, cos, tan, abs };

const char* to_string(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  double value = 0.0;  // constant
  int var = -1;        // variable index in the context
  Func func = Func::sqrt;
  NodePtr lhs;  // unary operand, call argument, or left operand
  NodePtr rhs;

  static NodePtr constant(double v);
  static NodePtr variable(int index);
  static NodePtr unary(Op op, NodePtr operand);
  static NodePtr binary(Op op, NodePtr a, NodePtr b);
  static NodePtr call(Func f, NodePtr arg);
};

bool structurally_equal(const Node& a, const Node& b);

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(NodePtr root, VarContext context);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const VarContext& context() const { return context_; }
  bool empty() const { return !root_; }

  bool operator==(const ScalarField& other) const;

 private:
  NodePtr root_;
  VarContext context_;
};

ScalarField parse(std::string_view text, const VarContext& context);
std::string format(const ScalarField& field);
std::string format(const Node& node, const VarContext& context);

// Replaces every variable i by replacement[i]; the result lives in `target`.
ScalarField substitute(const ScalarField& field, std::span<const NodePtr> replacement,
                       const VarContext& target);

// Integer value of a literal exponent (a constant, possibly negated), if any.
bool literal_integer(const Node& node, long& out);

// Carrier customization: arithmetic operators plus the functions below.
template <class T>
struct Carrier;

template <>
struct Carrier<double> {
  static double constant(const double&, double v) { return v; }
  static double value(const double& a) { return a; }
  static double divide(double a, double b) {
    if (b == 0.0) fail(ErrorKind::domain, "division by zero");
    return a / b;
  }
  static double sqrt(double a) {
    if (a < 0.0) fail(ErrorKind::domain, "sqrt of negative value");
    return std::sqrt(a);
  }
  static double exp(double a) { return std::exp(a); }
  static double log(double a) {
    if (a <= 0.0) fail(ErrorKind::domain, "log of non-positive value");
    return std::log(a);
  }
  static double sin(double a) { return std::sin(a); }
  static double cos(double a) { return std::cos(a); }
  static double tan(double a) { return std::tan(a); }
  static double abs(double a) { return std::fabs(a); }
};

namespace detail {

template <class T>
T pow_int(const T& base, long k) {
  using C = Carrier<T>;
  if (k == 0) return C::constant(base, 1.0);
  bool negative = k < 0;
  unsigned long e = negative ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  T result = C::constant(base, 1.0);
  T b = base;
  bool first = true;
  while (e > 0) {
    if (e & 1UL) {
      result = first ? b : result * b;
      first = false;
    }
    e >>= 1UL;
    if (e > 0) b = b * b;
  }
  if (negative) return C::divide(C::constant(base, 1.0), result);
  return result;
}

template <class T>
T eval_node(const Node& node, std::span<const T> vars) {
  using C = Carrier<T>;
  switch (node.op) {
    case Op::constant: return C::constant(vars[0], node.value);
    case Op::variable: return vars[static_cast<std::size_t>(node.var)];
    case Op::neg: return -eval_node(*node.lhs, vars);
    case Op::add: return eval_node(*node.lhs, vars) + eval_node(*node.rhs, vars);
    case Op::sub: return eval_node(*node.lhs, vars) - eval_node(*node.rhs, vars);
    case Op::mul: return eval_node(*node.lhs, vars) * eval_node(*node.rhs, vars);
    case Op::div: return C::divide(eval_node(*node.lhs, vars), eval_node(*node.rhs, vars));
    case Op::pow: {
      long k = 0;
      if (literal_integer(*node.rhs, k)) return pow_int(eval_node(*node.lhs, vars), k);
      T base = eval_node(*node.lhs, vars);
      T expo = eval_node(*node.rhs, vars);
      return C::exp(expo * C::log(base));
    }
    case Op::call: {
      T a = eval_node(*node.lhs, vars);
      switch (node.func) {
        case Func::sqrt: return C::sqrt(a);
        case Func::exp: return C::exp(a);
        case Func::log: return C::log(a);
        case Func::sin: return C::sin(a);
        case Func::cos: return C::cos(a);
        case Func::tan: return C::tan(a);
        case Func::abs: return C::abs(a);
      }
    }
  }
  fail(ErrorKind::invalid_argument, "malformed expression node");
}

}  // namespace detail

// vars[i] is the value of context variable i; all entries share one carrier kind.
template <class T>
T evaluate(const ScalarField& field, std::span<const T> vars) {
  if (static_cast<int>(vars.size()) != field.context().size())
    fail(ErrorKind::dimension_mismatch, "variable count does not match the chart");
  return detail::eval_node(field.root(), vars);
}

template <class T>
T evaluate(const ScalarField& field, const std::map<std::string, T>& assignment) {
  std::vector<T> vars;
  vars.reserve(static_cast<std::size_t>(field.context().size()));
  for (const auto& name : field.context().names()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) fail(ErrorKind::unknown_identifier, "no value for " + name);
    vars.push_back(it->second);
  }
  return evaluate<T>(field, std::span<const T>(vars));
}

inline double evaluate(const ScalarField& field, std::span<const double> vars) {
  return evaluate<double>(field, vars);
}

}  // namespace anholkit
