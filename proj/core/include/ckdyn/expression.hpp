#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ckdyn/errors.hpp"

namespace ckdyn {

enum class ExprOp : unsigned char {
  kConstant,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kPow,  // integer exponent, negative allowed away from zero base
  kSin,
  kCos,
  kExp,
};

/// Immutable expression tree over the flat coordinates x0..x{8n-1}.
///
/// Nodes are built through the static factories below, which perform
/// constant folding and the 0/1 identity simplifications (x+0, 1*x, x^1, ...).
/// Subtrees are shared freely; everything is safe to use concurrently.
class Expr {
 public:
  using Ptr = std::shared_ptr<const Expr>;

  static Ptr constant(double value);
  static Ptr variable(int index);
  static Ptr add(Ptr lhs, Ptr rhs);
  static Ptr sub(Ptr lhs, Ptr rhs);
  static Ptr mul(Ptr lhs, Ptr rhs);
  static Ptr div(Ptr lhs, Ptr rhs);
  static Ptr neg(Ptr operand);
  static Ptr pow(Ptr base, int exponent);
  static Ptr sin(Ptr operand);
  static Ptr cos(Ptr operand);
  static Ptr exp(Ptr operand);

  ExprOp op() const noexcept { return op_; }
  bool is_constant(double value) const noexcept;
  double constant_value() const noexcept { return value_; }  // kConstant
  int variable_index() const noexcept { return index_; }     // kVariable
  int exponent() const noexcept { return index_; }           // kPow
  const Ptr& lhs() const noexcept { return lhs_; }           // binary/unary operand
  const Ptr& rhs() const noexcept { return rhs_; }           // binary only

  /// Largest variable index appearing in the tree, or -1 if none.
  int max_variable() const noexcept { return max_var_; }

 protected:
  Expr(ExprOp op, double value, int index, Ptr lhs, Ptr rhs);

 private:
  ExprOp op_;
  double value_ = 0.0;
  int index_ = -1;
  int max_var_ = -1;
  Ptr lhs_;
  Ptr rhs_;
};

using ExprPtr = Expr::Ptr;

/// Parses an expression over x0..x{8n-1}.
///
/// Grammar (loosest to tightest binding):
///   expression := term (('+'|'-') term)*
///   term       := unary (('*'|'/') unary)*
///   unary      := '-' unary | power
///   power      := atom ('^' exponent)*          -- exponent: signed integer
///   atom       := number | 'pi' | 'x'<digits> | ('sin'|'cos'|'exp') '(' expression ')'
///               | '(' expression ')'
///
/// Throws ParseError (with offset) on syntax errors, variable indices >= 8n,
/// and non-integer exponents.
ExprPtr parse(std::string_view text, int n);

/// Precedence-aware rendering that reparses to a structurally equal tree.
std::string to_string(const Expr& e);
std::string to_string(const ExprPtr& e);

/// Symbolic partial derivative with respect to x_{variable}.
ExprPtr differentiate(const ExprPtr& e, int variable);

/// IEEE double evaluation. Throws EvalError on division by zero, a zero base
/// raised to a negative exponent, or any non-finite result.
double evaluate(const Expr& e, std::span<const double> x);
double evaluate(const ExprPtr& e, std::span<const double> x);

/// Structural equality (same ops, indices, exponents, bit-equal constants).
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const ExprPtr& a, const ExprPtr& b);

}  // namespace ckdyn
