#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "dirac_weyl/errors.hpp"

namespace dw {

/// Syntax or name error in a potential expression. `offset` is the byte
/// position in the source where parsing stopped.
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Immutable expression tree in one variable `x`.
///
/// Grammar, lowest to highest precedence:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          (right associative)
///   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp | tanh | abs | log | sign
///
/// `log` and `sign` exist so that derivative trees stay printable and
/// re-parseable; potentials normally use the other five.
class Expression {
 public:
  enum class Kind { constant, variable, add, sub, mul, div, pow, neg, func };
  enum class Func { sin, cos, exp, tanh, abs, log, sign };

  struct Node;

  static Expression constant(double value);
  static Expression variable();
  static Expression binary(Kind kind, const Expression& lhs, const Expression& rhs);
  static Expression negate(const Expression& arg);
  static Expression apply(Func func, const Expression& arg);

  double evaluate(double x) const;
  /// Symbolic d/dx with light constant folding.
  Expression derivative() const;
  /// Source text that parses back to an identical tree.
  std::string to_string() const;

  Kind kind() const;
  bool depends_on_x() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expression parse_expression(std::string_view source);

/// A parsed potential V(x) together with its symbolic derivatives.
struct PotentialExpression {
  std::string source;
  Expression ast;
  Expression first;
  Expression second;
};

PotentialExpression parse_potential(std::string_view source);

}  // namespace dw
