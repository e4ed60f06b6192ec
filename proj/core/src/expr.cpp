#include "anholkit/expr.hpp"

#include <charconv>
#include <cctype>
#include <cstring>

namespace anholkit {

VarContext::VarContext(int n, int m, Variance variance) : n_(n), m_(m), variance_(variance) {
  if (n < 1 || m < 1) fail(ErrorKind::dimension_mismatch, "chart dimensions must be positive");
  for (int i = 1; i <= n; ++i) names_.push_back("x" + std::to_string(i));
  const char letter = fiber_letter();
  for (int a = 1; a <= m; ++a) names_.push_back(std::string(1, letter) + std::to_string(a));
}

int VarContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

const char* to_string(Func f) {
  switch (f) {
    case Func::sqrt: return "sqrt";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::abs: return "abs";
  }
  return "?";
}

NodePtr Node::constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

NodePtr Node::variable(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->var = index;
  return n;
}

NodePtr Node::unary(Op op, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(operand);
  return n;
}

NodePtr Node::binary(Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr Node::call(Func f, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->op = Op::call;
  n->func = f;
  n->lhs = std::move(arg);
  return n;
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::constant: return a.value == b.value;
    case Op::variable: return a.var == b.var;
    case Op::neg: return structurally_equal(*a.lhs, *b.lhs);
    case Op::call: return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

bool literal_integer(const Node& node, long& out) {
  const Node* n = &node;
  bool negative = false;
  if (n->op == Op::neg) {
    negative = true;
    n = n->lhs.get();
  }
  if (n->op != Op::constant) return false;
  double v = n->value;
  if (!(std::fabs(v) < 1e9) || std::floor(v) != v) return false;
  out = static_cast<long>(v);
  if (negative) out = -out;
  return true;
}

ScalarField::ScalarField(NodePtr root, VarContext context)
    : root_(std::move(root)), context_(std::move(context)) {}

bool ScalarField::operator==(const ScalarField& other) const {
  if (!(context_ == other.context_)) return false;
  if (!root_ || !other.root_) return root_ == other.root_;
  return structurally_equal(*root_, *other.root_);
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  double number = 0.0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseError(ErrorKind::syntax, "digit expected after decimal point", i);
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      Token t{Tok::number, start, std::string(s.substr(start, i - start))};
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      default:
        throw ParseError(ErrorKind::syntax, std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

bool function_named(const std::string& name, Func& f) {
  static const std::pair<const char*, Func> table[] = {
      {"sqrt", Func::sqrt}, {"exp", Func::exp}, {"log", Func::log}, {"sin", Func::sin},
      {"cos", Func::cos},   {"tan", Func::tan}, {"abs", Func::abs}};
  for (const auto& [n, fn] : table)
    if (name == n) {
      f = fn;
      return true;
    }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, const VarContext& ctx) : tokens_(lex(text)), ctx_(ctx) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    if (peek().kind != Tok::end) {
      const Token& t = peek();
      throw ParseError(ErrorKind::syntax, "unexpected token '" + t.text + "'", t.offset);
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  NodePtr expr() {
    NodePtr left = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Op op = take().kind == Tok::plus ? Op::add : Op::sub;
      left = Node::binary(op, left, term());
    }
    return left;
  }

  NodePtr term() {
    NodePtr left = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      Op op = take().kind == Tok::star ? Op::mul : Op::div;
      left = Node::binary(op, left, unary());
    }
    return left;
  }

  NodePtr unary() {
    if (peek().kind == Tok::minus) {
      take();
      return Node::unary(Op::neg, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == Tok::caret) {
      take();
      return Node::binary(Op::pow, base, unary());
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        take();
        return Node::constant(t.number);
      case Tok::lparen: {
        take();
        NodePtr e = expr();
        expect(Tok::rparen, "')'");
        return e;
      }
      case Tok::ident: {
        take();
        if (peek().kind == Tok::lparen) {
          Func f;
          if (!function_named(t.text, f))
            throw ParseError(ErrorKind::unknown_identifier, "unknown function '" + t.text + "'", t.offset, t.text);
          take();
          std::vector<NodePtr> args;
          if (peek().kind != Tok::rparen) {
            args.push_back(expr());
            while (peek().kind == Tok::comma) {
              take();
              args.push_back(expr());
            }
          }
          expect(Tok::rparen, "')'");
          if (args.size() != 1)
            throw ParseError(ErrorKind::arity,
                             t.text + " takes 1 argument, got " + std::to_string(args.size()), t.offset, t.text);
          return Node::call(f, args[0]);
        }
        int idx = ctx_.index_of(t.text);
        if (idx < 0) {
          Func f;
          if (function_named(t.text, f))
            throw ParseError(ErrorKind::syntax, "function '" + t.text + "' needs an argument list", t.offset, t.text);
          throw ParseError(ErrorKind::unknown_identifier, "unknown identifier '" + t.text + "'", t.offset, t.text);
        }
        return Node::variable(idx);
      }
      case Tok::end:
        throw ParseError(ErrorKind::syntax, "unexpected end of input", t.offset);
      default:
        throw ParseError(ErrorKind::syntax, "unexpected token '" + t.text + "'", t.offset);
    }
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      const Token& t = peek();
      throw ParseError(ErrorKind::syntax, std::string("expected ") + what, t.offset);
    }
    take();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const VarContext& ctx_;
};

// Binding strength used when deciding on parentheses.
int precedence(const Node& n) {
  switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

std::string number_text(double v) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

void emit(const Node& n, const VarContext& ctx, std::string& out);

void emit_wrapped(const Node& n, const VarContext& ctx, std::string& out, bool wrap) {
  if (wrap) out += '(';
  emit(n, ctx, out);
  if (wrap) out += ')';
}

void emit(const Node& n, const VarContext& ctx, std::string& out) {
  switch (n.op) {
    case Op::constant:
      if (n.value < 0 || std::signbit(n.value)) {
        out += "(-" + number_text(-n.value) + ")";
      } else {
        out += number_text(n.value);
      }
      return;
    case Op::variable: out += ctx.name(n.var); return;
    case Op::neg:
      out += '-';
      emit_wrapped(*n.lhs, ctx, out, precedence(*n.lhs) < 4);
      return;
    case Op::call:
      out += to_string(n.func);
      out += '(';
      emit(*n.lhs, ctx, out);
      out += ')';
      return;
    case Op::add:
    case Op::sub:
      emit_wrapped(*n.lhs, ctx, out, precedence(*n.lhs) < 1);
      out += n.op == Op::add ? " + " : " - ";
      emit_wrapped(*n.rhs, ctx, out, precedence(*n.rhs) <= 1);
      return;
    case Op::mul:
    case Op::div:
      emit_wrapped(*n.lhs, ctx, out, precedence(*n.lhs) < 2);
      out += n.op == Op::mul ? "*" : "/";
      emit_wrapped(*n.rhs, ctx, out, precedence(*n.rhs) <= 2);
      return;
    case Op::pow:
      emit_wrapped(*n.lhs, ctx, out, precedence(*n.lhs) < 5);
      out += '^';
      emit_wrapped(*n.rhs, ctx, out, precedence(*n.rhs) < 3);
      return;
  }
}

NodePtr substitute_node(const NodePtr& n, std::span<const NodePtr> repl) {
  switch (n->op) {
    case Op::constant: return n;
    case Op::variable: return repl[static_cast<std::size_t>(n->var)];
    case Op::neg: return Node::unary(Op::neg, substitute_node(n->lhs, repl));
    case Op::call: return Node::call(n->func, substitute_node(n->lhs, repl));
    default:
      return Node::binary(n->op, substitute_node(n->lhs, repl), substitute_node(n->rhs, repl));
  }
}

}  // namespace

ScalarField parse(std::string_view text, const VarContext& context) {
  Parser p(text, context);
  return ScalarField(p.parse_all(), context);
}

std::string format(const Node& node, const VarContext& context) {
  std::string out;
  emit(node, context, out);
  return out;
}

std::string format(const ScalarField& field) { return format(field.root(), field.context()); }

ScalarField substitute(const ScalarField& field, std::span<const NodePtr> replacement,
                       const VarContext& target) {
  if (static_cast<int>(replacement.size()) != field.context().size())
    fail(ErrorKind::dimension_mismatch, "substitution needs one expression per variable");
  return ScalarField(substitute_node(field.root_ptr(), replacement), target);
}

}  // namespace anholkit
