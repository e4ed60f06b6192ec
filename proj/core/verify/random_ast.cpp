#include "random_ast.hpp"

#include <array>

namespace anholkit::verify {
namespace {

class Builder {
 public:
  Builder(const VarContext& ctx, std::mt19937_64& rng, const RandomAstSpec& spec) : ctx_(ctx), rng_(rng), spec_(spec) {}

  NodePtr build(int depth) {
    if (depth <= 0 || pick(10) < 2) return leaf();
    NodePtr a = build(depth - 1);
    switch (pick(spec_.allow_abs ? 12 : 11)) {
      case 0: return Node::binary(Op::add, a, build(depth - 1));
      case 1: return Node::binary(Op::sub, a, build(depth - 1));
      case 2:
      case 3: return Node::binary(Op::mul, a, build(depth - 1));
      case 4: return Node::binary(Op::div, a, positive(build(depth - 1)));
      case 5: return Node::binary(Op::pow, a, Node::constant(static_cast<double>(2 + pick(2))));
      case 6: return Node::binary(Op::pow, positive(a), Node::constant(0.5));
      case 7: return Node::call(Func::sqrt, positive(a));
      case 8: return Node::call(Func::log, positive(a));
      case 9: return Node::call(pick(2) == 0 ? Func::sin : Func::cos, a);
      case 10:
        return pick(2) == 0 ? Node::call(Func::exp, Node::call(Func::sin, a))
                            : Node::unary(Op::neg, Node::call(Func::tan, Node::binary(Op::mul, Node::constant(0.5),
                                                                                       Node::call(Func::cos, a))));
      default: return Node::call(Func::abs, a);
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  NodePtr leaf() {
    static constexpr std::array<double, 8> kConstants{0.5, 1.0, 1.25, 2.0, 3.0, 0.75, 1.5, 0.1};
    if (pick(10) < 7) return Node::variable(pick(ctx_.size()));
    return Node::constant(kConstants[static_cast<std::size_t>(pick(static_cast<int>(kConstants.size())))]);
  }

  // c + a^2 with c >= 1
  NodePtr positive(NodePtr a) {
    return Node::binary(Op::add, Node::constant(1.0 + pick(3)), Node::binary(Op::pow, std::move(a), Node::constant(2.0)));
  }

  const VarContext& ctx_;
  std::mt19937_64& rng_;
  const RandomAstSpec& spec_;
};

}  // namespace

ScalarField random_ast(const VarContext& context, std::mt19937_64& rng, const RandomAstSpec& spec) {
  Builder b(context, rng, spec);
  return ScalarField(b.build(spec.max_depth), context);
}

}  // namespace anholkit::verify
