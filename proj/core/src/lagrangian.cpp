#include "ckdyn/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace ckdyn {

Lagrangian::Lagrangian(ExprPtr expr, int n) : n_(n), expr_(std::move(expr)) {
  if (n_ < 1) throw std::invalid_argument("block size n must be >= 1");
  if (!expr_) throw std::invalid_argument("null Lagrangian expression");
  const int dim = dimension();
  if (expr_->max_variable() >= dim) {
    throw std::invalid_argument("Lagrangian uses x" + std::to_string(expr_->max_variable()) +
                                " but the dimension is " + std::to_string(dim));
  }

  grad_.reserve(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    grad_.push_back(differentiate(expr_, a));
  }
  hess_.resize(static_cast<std::size_t>(dim) * dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      ExprPtr h = differentiate(grad_[static_cast<std::size_t>(a)], b);
      hess_[static_cast<std::size_t>(a) * dim + b] = h;
      hess_[static_cast<std::size_t>(b) * dim + a] = std::move(h);
    }
  }
}

const ExprPtr& Lagrangian::gradient_expression(int a) const {
  return grad_.at(static_cast<std::size_t>(a));
}

const ExprPtr& Lagrangian::hessian_expression(int a, int b) const {
  const int dim = dimension();
  if (a < 0 || a >= dim || b < 0 || b >= dim) {
    throw std::out_of_range("hessian index out of range");
  }
  return hess_[static_cast<std::size_t>(a) * dim + b];
}

double Lagrangian::value(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return evaluate(expr_, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::VectorXd Lagrangian::gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const int dim = dimension();
  if (x.size() != dim) {
    throw std::invalid_argument("state has " + std::to_string(x.size()) +
                                " components, expected " + std::to_string(dim));
  }
  const std::span<const double> pt(x.data(), static_cast<std::size_t>(x.size()));
  Eigen::VectorXd g(dim);
  for (int a = 0; a < dim; ++a) g[a] = evaluate(grad_[static_cast<std::size_t>(a)], pt);
  return g;
}

Eigen::MatrixXd Lagrangian::hessian(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const int dim = dimension();
  if (x.size() != dim) {
    throw std::invalid_argument("state has " + std::to_string(x.size()) +
                                " components, expected " + std::to_string(dim));
  }
  const std::span<const double> pt(x.data(), static_cast<std::size_t>(x.size()));
  Eigen::MatrixXd h(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      const double v = evaluate(hess_[static_cast<std::size_t>(a) * dim + b], pt);
      h(a, b) = v;
      h(b, a) = v;
    }
  }
  return h;
}

namespace {

double take_param(std::map<std::string, double>& params, const std::string& key,
                  double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

double require_param(std::map<std::string, double>& params, const std::string& key,
                     std::string_view templ) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("template '" + std::string(templ) + "' requires param '" + key +
                                "'");
  }
  const double v = it->second;
  params.erase(it);
  return v;
}

ExprPtr quadratic_sum(double half_m, int dim) {
  ExprPtr sum = Expr::constant(0.0);
  for (int a = 0; a < dim; ++a) {
    sum = Expr::add(std::move(sum), Expr::pow(Expr::variable(a), 2));
  }
  return Expr::mul(Expr::constant(half_m), std::move(sum));
}

}  // namespace

Lagrangian builtin_lagrangian(std::string_view name,
                              const std::map<std::string, double>& params) {
  if (name != "isotropic" && name != "free") {
    throw std::invalid_argument("unknown Lagrangian template '" + std::string(name) +
                                "' (expected \"isotropic\" or \"free\")");
  }
  std::map<std::string, double> rest = params;

  const double n_value = require_param(rest, "n", name);
  if (n_value < 1.0 || n_value != std::floor(n_value)) {
    throw std::invalid_argument("param 'n' must be a positive integer");
  }
  const int n = static_cast<int>(n_value);
  const double m = take_param(rest, "m", 1.0);
  take_param(rest, "omega", 1.0);  // accepted, unused by these templates

  ExprPtr expr = quadratic_sum(m / 2.0, 8 * n);
  if (name == "free") {
    const double g = require_param(rest, "g", name);
    expr = Expr::sub(std::move(expr),
                     Expr::mul(Expr::constant(m * g), Expr::variable(0)));
  }

  if (!rest.empty()) {
    throw std::invalid_argument("unknown param '" + rest.begin()->first + "' for template '" +
                                std::string(name) + "'");
  }
  return Lagrangian(std::move(expr), n);
}

}  // namespace ckdyn
