#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ckdyn/expression.hpp"

namespace ckdyn {

/// A Lagrangian over the 8n flat coordinates, with the symbolic gradient and
/// Hessian cached at construction (the dynamics inner loop evaluates them at
/// every step). The cached Hessian is stored mirrored across the diagonal, so
/// the evaluated matrix is exactly symmetric.
class Lagrangian {
 public:
  Lagrangian(ExprPtr expr, int n);

  int block_size() const noexcept { return n_; }
  int dimension() const noexcept { return 8 * n_; }

  const ExprPtr& expression() const noexcept { return expr_; }
  const ExprPtr& gradient_expression(int a) const;
  const ExprPtr& hessian_expression(int a, int b) const;

  double value(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd hessian(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  int n_;
  ExprPtr expr_;
  std::vector<ExprPtr> grad_;  // dimension() entries
  std::vector<ExprPtr> hess_;  // dimension()^2 entries, row-major, mirrored
};

/// Builtin Lagrangian templates.
///
///   "isotropic": L = (m/2) * sum_a x_a^2            params: n, m=1, omega=1
///   "free":      L = isotropic - m*g*x0             params: n, m=1, omega=1, g
///
/// "n" is required; "g" is required for "free". omega is accepted for
/// interface stability but unused by these two templates.
/// Throws std::invalid_argument for unknown names, missing or unknown params.
Lagrangian builtin_lagrangian(std::string_view name, const std::map<std::string, double>& params);

}  // namespace ckdyn
