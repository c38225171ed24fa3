#include "dirac_weyl/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dw {

struct Expression::Node {
  Kind kind;
  double value = 0.0;
  Func func = Func::sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

using NodePtr = std::shared_ptr<const Expression::Node>;

ParseError::ParseError(const std::string& message, std::size_t offset)
    : ConfigError(message), offset_(offset) {}

namespace {

struct FuncName {
  const char* name;
  Expression::Func func;
};

constexpr FuncName func_names[] = {
    {"sin", Expression::Func::sin},   {"cos", Expression::Func::cos},
    {"exp", Expression::Func::exp},   {"tanh", Expression::Func::tanh},
    {"abs", Expression::Func::abs},   {"log", Expression::Func::log},
    {"sign", Expression::Func::sign},
};

const char* func_name(Expression::Func f) {
  for (const auto& fn : func_names)
    if (fn.func == f) return fn.name;
  return "?";
}

double eval(const Expression::Node& n, double x) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::constant: return n.value;
    case K::variable: return x;
    case K::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case K::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case K::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case K::div: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case K::pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case K::neg: return -eval(*n.lhs, x);
    case K::func: {
      double a = eval(*n.lhs, x);
      switch (n.func) {
        case Expression::Func::sin: return std::sin(a);
        case Expression::Func::cos: return std::cos(a);
        case Expression::Func::exp: return std::exp(a);
        case Expression::Func::tanh: return std::tanh(a);
        case Expression::Func::abs: return std::abs(a);
        case Expression::Func::log: return std::log(a);
        case Expression::Func::sign: return (a > 0) - (a < 0);
      }
    }
  }
  return 0.0;
}

bool same(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  using K = Expression::Kind;
  switch (a->kind) {
    case K::constant: return a->value == b->value;
    case K::variable: return true;
    case K::func: return a->func == b->func && same(a->lhs, b->lhs);
    case K::neg: return same(a->lhs, b->lhs);
    default: return same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
  }
}

int precedence(const Expression::Node& n) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::add:
    case K::sub: return 1;
    case K::mul:
    case K::div: return 2;
    case K::neg: return 3;
    case K::pow: return 4;
    default: return 5;
  }
}

void print(const Expression::Node& n, std::string& out);

void print_child(const Expression::Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Expression::Node& n, std::string& out) {
  using K = Expression::Kind;
  switch (n.kind) {
    case K::constant: {
      char buf[64];
      auto r = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, r.ptr);
      return;
    }
    case K::variable: out += 'x'; return;
    case K::func:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    case K::neg:
      out += '-';
      print_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case K::pow:
      print_child(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      print_child(*n.rhs, precedence(*n.rhs) < 3, out);
      return;
    default: {
      int p = precedence(n);
      const char* op = n.kind == K::add ? " + " : n.kind == K::sub ? " - " : n.kind == K::mul ? " * " : " / ";
      print_child(*n.lhs, precedence(*n.lhs) < p, out);
      out += op;
      print_child(*n.rhs, precedence(*n.rhs) <= p, out);
      return;
    }
  }
}

bool depends(const NodePtr& n) {
  if (!n) return false;
  if (n->kind == Expression::Kind::variable) return true;
  return depends(n->lhs) || depends(n->rhs);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expression parse() {
    Expression e = expr();
    skip();
    if (pos_ != src_.size()) fail("expected operator or end of input");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& expected) {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + expected +
                         ", found " + found,
                     pos_);
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      Expression rhs = term();
      lhs = Expression::binary(c == '+' ? Expression::Kind::add : Expression::Kind::sub, lhs, rhs);
    }
  }

  Expression term() {
    Expression lhs = unary();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      Expression rhs = unary();
      lhs = Expression::binary(c == '*' ? Expression::Kind::mul : Expression::Kind::div, lhs, rhs);
    }
  }

  Expression unary() {
    if (peek() == '-') {
      ++pos_;
      return Expression::negate(unary());
    }
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (peek() == '^') {
      ++pos_;
      Expression exponent = unary();
      return Expression::binary(Expression::Kind::pow, base, exponent);
    }
    return base;
  }

  Expression primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("expected number, 'x', function or '('");
  }

  Expression number() {
    std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        digits();
      else
        pos_ = save;
    }
    double v = 0.0;
    auto r = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (r.ec != std::errc() || r.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("expected a number");
    }
    return Expression::constant(v);
  }

  Expression name() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string id(src_.substr(start, pos_ - start));
    if (id == "x") return Expression::variable();
    if (id == "pi") return Expression::constant(std::numbers::pi);
    for (const auto& fn : func_names) {
      if (id == fn.name) {
        if (peek() != '(') fail("expected '(' after " + id);
        ++pos_;
        Expression arg = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return Expression::apply(fn.func, arg);
      }
    }
    throw ParseError("unknown identifier '" + id + "' at offset " + std::to_string(start), start);
  }
};

}  // namespace

Expression Expression::constant(double value) {
  if (std::signbit(value) && value != 0.0) return negate(constant(-value));
  return Expression(std::make_shared<const Node>(Node{Kind::constant, value == 0.0 ? 0.0 : value}));
}

Expression Expression::variable() { return Expression(std::make_shared<const Node>(Node{Kind::variable})); }

Expression Expression::binary(Kind kind, const Expression& lhs, const Expression& rhs) {
  if (kind != Kind::add && kind != Kind::sub && kind != Kind::mul && kind != Kind::div &&
      kind != Kind::pow)
    throw std::invalid_argument("Expression::binary: not a binary kind");
  return Expression(std::make_shared<const Node>(Node{kind, 0.0, Func::sin, lhs.node_, rhs.node_}));
}

Expression Expression::negate(const Expression& arg) {
  return Expression(std::make_shared<const Node>(Node{Kind::neg, 0.0, Func::sin, arg.node_, nullptr}));
}

Expression Expression::apply(Func func, const Expression& arg) {
  return Expression(std::make_shared<const Node>(Node{Kind::func, 0.0, func, arg.node_, nullptr}));
}

double Expression::evaluate(double x) const { return eval(*node_, x); }

Expression::Kind Expression::kind() const { return node_->kind; }

bool Expression::depends_on_x() const { return depends(node_); }

bool operator==(const Expression& a, const Expression& b) { return same(a.node_, b.node_); }

std::string Expression::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

namespace {

// Folding helpers for derivative trees.
bool is_const(const Expression& e, double& v) {
  if (e.kind() == Expression::Kind::constant) {
    v = e.evaluate(0.0);
    return true;
  }
  if (e.kind() == Expression::Kind::neg && !e.depends_on_x()) {
    v = e.evaluate(0.0);
    return std::isfinite(v);
  }
  return false;
}

Expression add(const Expression& a, const Expression& b) {
  double va, vb;
  bool ca = is_const(a, va), cb = is_const(b, vb);
  if (ca && cb) return Expression::constant(va + vb);
  if (ca && va == 0.0) return b;
  if (cb && vb == 0.0) return a;
  return Expression::binary(Expression::Kind::add, a, b);
}

Expression sub(const Expression& a, const Expression& b) {
  double va, vb;
  bool ca = is_const(a, va), cb = is_const(b, vb);
  if (ca && cb) return Expression::constant(va - vb);
  if (cb && vb == 0.0) return a;
  if (ca && va == 0.0) return Expression::negate(b);
  return Expression::binary(Expression::Kind::sub, a, b);
}

Expression mul(const Expression& a, const Expression& b) {
  double va, vb;
  bool ca = is_const(a, va), cb = is_const(b, vb);
  if (ca && cb) return Expression::constant(va * vb);
  if ((ca && va == 0.0) || (cb && vb == 0.0)) return Expression::constant(0.0);
  if (ca && va == 1.0) return b;
  if (cb && vb == 1.0) return a;
  if (ca && va == -1.0) return Expression::negate(b);
  if (cb && vb == -1.0) return Expression::negate(a);
  return Expression::binary(Expression::Kind::mul, a, b);
}

Expression divide(const Expression& a, const Expression& b) {
  double va, vb;
  bool ca = is_const(a, va), cb = is_const(b, vb);
  if (ca && va == 0.0) return Expression::constant(0.0);
  if (cb && vb == 1.0) return a;
  return Expression::binary(Expression::Kind::div, a, b);
}

Expression power(const Expression& a, const Expression& b) {
  double vb;
  if (is_const(b, vb)) {
    if (vb == 0.0) return Expression::constant(1.0);
    if (vb == 1.0) return a;
  }
  return Expression::binary(Expression::Kind::pow, a, b);
}

}  // namespace

Expression Expression::derivative() const {
  using F = Func;
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return constant(0.0);
    case Kind::variable: return constant(1.0);
    default: break;
  }
  Expression a(n.lhs);
  Expression da = a.derivative();
  switch (n.kind) {
    case Kind::add: return add(da, Expression(n.rhs).derivative());
    case Kind::sub: return sub(da, Expression(n.rhs).derivative());
    case Kind::mul: {
      Expression b(n.rhs);
      return add(mul(da, b), mul(a, b.derivative()));
    }
    case Kind::div: {
      Expression b(n.rhs);
      Expression db = b.derivative();
      double vdb;
      if (is_const(db, vdb) && vdb == 0.0) return divide(da, b);
      return sub(divide(da, b), divide(mul(a, db), power(b, constant(2.0))));
    }
    case Kind::pow: {
      Expression b(n.rhs);
      if (!b.depends_on_x()) {
        double vb;
        Expression reduced = is_const(b, vb) ? constant(vb - 1.0) : sub(b, constant(1.0));
        return mul(mul(b, power(a, reduced)), da);
      }
      Expression db = b.derivative();
      Expression inner = add(mul(db, apply(F::log, a)), divide(mul(b, da), a));
      return mul(*this, inner);
    }
    case Kind::neg: {
      double v;
      if (is_const(da, v)) return constant(-v);
      return negate(da);
    }
    case Kind::func: {
      Expression outer = constant(0.0);
      switch (n.func) {
        case F::sin: outer = apply(F::cos, a); break;
        case F::cos: outer = negate(apply(F::sin, a)); break;
        case F::exp: outer = *this; break;
        case F::tanh: outer = sub(constant(1.0), power(*this, constant(2.0))); break;
        case F::abs: outer = apply(F::sign, a); break;
        case F::log: return divide(da, a);
        case F::sign: return constant(0.0);
      }
      return mul(outer, da);
    }
    default: break;
  }
  return constant(0.0);
}

Expression parse_expression(std::string_view source) { return Parser(source).parse(); }

PotentialExpression parse_potential(std::string_view source) {
  Expression ast = parse_expression(source);
  Expression first = ast.derivative();
  Expression second = first.derivative();
  return {std::string(source), ast, first, second};
}

}  // namespace dw
