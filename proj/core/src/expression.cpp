#include "ckdyn/expression.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace ckdyn {

namespace {

bool holds_constant(const ExprPtr& e, double v) {
  return e->op() == ExprOp::kConstant && e->constant_value() == v;
}

int max_var_of(const ExprPtr& a, const ExprPtr& b) {
  int m = -1;
  if (a) m = std::max(m, a->max_variable());
  if (b) m = std::max(m, b->max_variable());
  return m;
}

// Integer power by repeated squaring; negative exponents via reciprocal.
double powi(double base, int exponent) {
  if (exponent < 0) return 1.0 / powi(base, -exponent);
  double acc = 1.0;
  double factor = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) acc *= factor;
    factor *= factor;
  }
  return acc;
}

}  // namespace

Expr::Expr(ExprOp op, double value, int index, Ptr lhs, Ptr rhs)
    : op_(op), value_(value), index_(index), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (op_ == ExprOp::kVariable) {
    max_var_ = index_;
  } else {
    max_var_ = max_var_of(lhs_, rhs_);
  }
}

bool Expr::is_constant(double value) const noexcept {
  return op_ == ExprOp::kConstant && value_ == value;
}

namespace {
ExprPtr make(ExprOp op, double value, int index, ExprPtr lhs, ExprPtr rhs) {
  struct Access : Expr {
    Access(ExprOp op, double value, int index, Ptr lhs, Ptr rhs)
        : Expr(op, value, index, std::move(lhs), std::move(rhs)) {}
  };
  return std::make_shared<const Access>(op, value, index, std::move(lhs), std::move(rhs));
}

// Folds a computed constant only when finite; otherwise the caller keeps the
// unfolded node so evaluation can report the failure.
ExprPtr fold_if_finite(double v, ExprPtr fallback) {
  if (std::isfinite(v)) return Expr::constant(v);
  return fallback;
}
}  // namespace

ExprPtr Expr::constant(double value) {
  return make(ExprOp::kConstant, value, -1, nullptr, nullptr);
}

ExprPtr Expr::variable(int index) {
  if (index < 0) throw std::invalid_argument("variable index must be >= 0");
  return make(ExprOp::kVariable, 0.0, index, nullptr, nullptr);
}

ExprPtr Expr::add(Ptr lhs, Ptr rhs) {
  if (lhs->op() == ExprOp::kConstant && rhs->op() == ExprOp::kConstant) {
    return constant(lhs->constant_value() + rhs->constant_value());
  }
  if (holds_constant(lhs, 0.0)) return rhs;
  if (holds_constant(rhs, 0.0)) return lhs;
  return make(ExprOp::kAdd, 0.0, -1, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::sub(Ptr lhs, Ptr rhs) {
  if (lhs->op() == ExprOp::kConstant && rhs->op() == ExprOp::kConstant) {
    return constant(lhs->constant_value() - rhs->constant_value());
  }
  if (holds_constant(rhs, 0.0)) return lhs;
  if (holds_constant(lhs, 0.0)) return neg(std::move(rhs));
  return make(ExprOp::kSub, 0.0, -1, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::mul(Ptr lhs, Ptr rhs) {
  if (lhs->op() == ExprOp::kConstant && rhs->op() == ExprOp::kConstant) {
    auto node = make(ExprOp::kMul, 0.0, -1, lhs, rhs);
    return fold_if_finite(lhs->constant_value() * rhs->constant_value(), node);
  }
  if (holds_constant(lhs, 0.0) || holds_constant(rhs, 0.0)) return constant(0.0);
  if (holds_constant(lhs, 1.0)) return rhs;
  if (holds_constant(rhs, 1.0)) return lhs;
  return make(ExprOp::kMul, 0.0, -1, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::div(Ptr lhs, Ptr rhs) {
  if (lhs->op() == ExprOp::kConstant && rhs->op() == ExprOp::kConstant &&
      rhs->constant_value() != 0.0) {
    auto node = make(ExprOp::kDiv, 0.0, -1, lhs, rhs);
    return fold_if_finite(lhs->constant_value() / rhs->constant_value(), node);
  }
  if (holds_constant(rhs, 1.0)) return lhs;
  return make(ExprOp::kDiv, 0.0, -1, std::move(lhs), std::move(rhs));
}

ExprPtr Expr::neg(Ptr operand) {
  if (operand->op() == ExprOp::kConstant) return constant(-operand->constant_value());
  if (operand->op() == ExprOp::kNeg) return operand->lhs();
  return make(ExprOp::kNeg, 0.0, -1, std::move(operand), nullptr);
}

ExprPtr Expr::pow(Ptr base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base->op() == ExprOp::kConstant &&
      !(base->constant_value() == 0.0 && exponent < 0)) {
    auto node = make(ExprOp::kPow, 0.0, exponent, base, nullptr);
    return fold_if_finite(powi(base->constant_value(), exponent), node);
  }
  return make(ExprOp::kPow, 0.0, exponent, std::move(base), nullptr);
}

ExprPtr Expr::sin(Ptr operand) {
  if (operand->op() == ExprOp::kConstant) return constant(std::sin(operand->constant_value()));
  return make(ExprOp::kSin, 0.0, -1, std::move(operand), nullptr);
}

ExprPtr Expr::cos(Ptr operand) {
  if (operand->op() == ExprOp::kConstant) return constant(std::cos(operand->constant_value()));
  return make(ExprOp::kCos, 0.0, -1, std::move(operand), nullptr);
}

ExprPtr Expr::exp(Ptr operand) {
  if (operand->op() == ExprOp::kConstant) {
    auto node = make(ExprOp::kExp, 0.0, -1, operand, nullptr);
    return fold_if_finite(std::exp(operand->constant_value()), node);
  }
  return make(ExprOp::kExp, 0.0, -1, std::move(operand), nullptr);
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

ExprPtr differentiate(const ExprPtr& e, int variable) {
  if (variable < 0) throw std::invalid_argument("variable index must be >= 0");
  if (e->max_variable() < variable) return Expr::constant(0.0);

  switch (e->op()) {
    case ExprOp::kConstant:
      return Expr::constant(0.0);
    case ExprOp::kVariable:
      return Expr::constant(e->variable_index() == variable ? 1.0 : 0.0);
    case ExprOp::kAdd:
      return Expr::add(differentiate(e->lhs(), variable), differentiate(e->rhs(), variable));
    case ExprOp::kSub:
      return Expr::sub(differentiate(e->lhs(), variable), differentiate(e->rhs(), variable));
    case ExprOp::kMul:
      return Expr::add(Expr::mul(differentiate(e->lhs(), variable), e->rhs()),
                       Expr::mul(e->lhs(), differentiate(e->rhs(), variable)));
    case ExprOp::kDiv:
      // (f/g)' = (f' g - f g') / g^2
      return Expr::div(Expr::sub(Expr::mul(differentiate(e->lhs(), variable), e->rhs()),
                                 Expr::mul(e->lhs(), differentiate(e->rhs(), variable))),
                       Expr::pow(e->rhs(), 2));
    case ExprOp::kNeg:
      return Expr::neg(differentiate(e->lhs(), variable));
    case ExprOp::kPow:
      // (f^k)' = k f^{k-1} f'
      return Expr::mul(Expr::mul(Expr::constant(static_cast<double>(e->exponent())),
                                 Expr::pow(e->lhs(), e->exponent() - 1)),
                       differentiate(e->lhs(), variable));
    case ExprOp::kSin:
      return Expr::mul(Expr::cos(e->lhs()), differentiate(e->lhs(), variable));
    case ExprOp::kCos:
      return Expr::neg(Expr::mul(Expr::sin(e->lhs()), differentiate(e->lhs(), variable)));
    case ExprOp::kExp:
      return Expr::mul(Expr::exp(e->lhs()), differentiate(e->lhs(), variable));
  }
  throw std::logic_error("unhandled expression op");
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double eval_node(const Expr& e, std::span<const double> x) {
  switch (e.op()) {
    case ExprOp::kConstant:
      return e.constant_value();
    case ExprOp::kVariable:
      return x[static_cast<std::size_t>(e.variable_index())];
    case ExprOp::kAdd:
      return eval_node(*e.lhs(), x) + eval_node(*e.rhs(), x);
    case ExprOp::kSub:
      return eval_node(*e.lhs(), x) - eval_node(*e.rhs(), x);
    case ExprOp::kMul:
      return eval_node(*e.lhs(), x) * eval_node(*e.rhs(), x);
    case ExprOp::kDiv: {
      const double den = eval_node(*e.rhs(), x);
      if (den == 0.0) throw EvalError("division by zero");
      return eval_node(*e.lhs(), x) / den;
    }
    case ExprOp::kNeg:
      return -eval_node(*e.lhs(), x);
    case ExprOp::kPow: {
      const double base = eval_node(*e.lhs(), x);
      if (base == 0.0 && e.exponent() < 0) {
        throw EvalError("zero base raised to negative exponent");
      }
      return powi(base, e.exponent());
    }
    case ExprOp::kSin:
      return std::sin(eval_node(*e.lhs(), x));
    case ExprOp::kCos:
      return std::cos(eval_node(*e.lhs(), x));
    case ExprOp::kExp:
      return std::exp(eval_node(*e.lhs(), x));
  }
  throw std::logic_error("unhandled expression op");
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> x) {
  if (e.max_variable() >= static_cast<int>(x.size())) {
    throw std::invalid_argument("evaluation point has " + std::to_string(x.size()) +
                                " components but expression uses x" +
                                std::to_string(e.max_variable()));
  }
  const double v = eval_node(e, x);
  if (!std::isfinite(v)) throw EvalError("non-finite result");
  return v;
}

double evaluate(const ExprPtr& e, std::span<const double> x) { return evaluate(*e, x); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Binding levels used to decide parenthesization; atoms are level 5.
int level_of(const Expr& e) {
  switch (e.op()) {
    case ExprOp::kAdd:
    case ExprOp::kSub:
      return 1;
    case ExprOp::kMul:
    case ExprOp::kDiv:
      return 2;
    case ExprOp::kNeg:
      return 3;
    case ExprOp::kPow:
      return 4;
    case ExprOp::kConstant:
      // A negative literal prints with a leading '-', so it binds like a
      // unary minus.
      return e.constant_value() < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

void print_node(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_level, std::string& out) {
  if (level_of(child) < min_level) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const Expr& e, std::string& out) {
  switch (e.op()) {
    case ExprOp::kConstant:
      out += format_double(e.constant_value());
      return;
    case ExprOp::kVariable:
      out += 'x';
      out += std::to_string(e.variable_index());
      return;
    case ExprOp::kAdd:
      print_child(*e.lhs(), 1, out);
      out += " + ";
      print_child(*e.rhs(), 2, out);
      return;
    case ExprOp::kSub:
      print_child(*e.lhs(), 1, out);
      out += " - ";
      print_child(*e.rhs(), 2, out);
      return;
    case ExprOp::kMul:
      print_child(*e.lhs(), 2, out);
      out += "*";
      print_child(*e.rhs(), 3, out);
      return;
    case ExprOp::kDiv:
      print_child(*e.lhs(), 2, out);
      out += "/";
      print_child(*e.rhs(), 3, out);
      return;
    case ExprOp::kNeg:
      out += '-';
      print_child(*e.lhs(), 3, out);
      return;
    case ExprOp::kPow:
      print_child(*e.lhs(), 5, out);
      out += '^';
      if (e.exponent() < 0) {
        out += '(';
        out += std::to_string(e.exponent());
        out += ')';
      } else {
        out += std::to_string(e.exponent());
      }
      return;
    case ExprOp::kSin:
      out += "sin(";
      print_node(*e.lhs(), out);
      out += ')';
      return;
    case ExprOp::kCos:
      out += "cos(";
      print_node(*e.lhs(), out);
      out += ')';
      return;
    case ExprOp::kExp:
      out += "exp(";
      print_node(*e.lhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_node(e, out);
  return out;
}

std::string to_string(const ExprPtr& e) { return to_string(*e); }

bool same_structure(const Expr& a, const Expr& b) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case ExprOp::kConstant: {
      const double x = a.constant_value();
      const double y = b.constant_value();
      return x == y || (std::isnan(x) && std::isnan(y));
    }
    case ExprOp::kVariable:
      return a.variable_index() == b.variable_index();
    case ExprOp::kPow:
      return a.exponent() == b.exponent() && same_structure(*a.lhs(), *b.lhs());
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv:
      return same_structure(*a.lhs(), *b.lhs()) && same_structure(*a.rhs(), *b.rhs());
    case ExprOp::kNeg:
    case ExprOp::kSin:
    case ExprOp::kCos:
    case ExprOp::kExp:
      return same_structure(*a.lhs(), *b.lhs());
  }
  return false;
}

bool same_structure(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return same_structure(*a, *b);
}

}  // namespace ckdyn
