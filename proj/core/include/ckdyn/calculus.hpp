#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ckdyn/lagrangian.hpp"
#include "ckdyn/structures.hpp"

namespace ckdyn {

/// A 1-form with symbolic coefficients: coeffs[a] multiplies dx_a.
struct OneForm {
  std::vector<ExprPtr> coeffs;
};

/// Vertical differential d_J L = i_J dL: the 1-form with coefficient
///   (d_J L)_a = sign[b(a)] * dL/dx_{sigma(a)},
/// where a sits in block b(a) and sigma relocates it to block target[b(a)]
/// at the same intra-block index. As a coefficient vector this is J^T grad L.
OneForm vertical_differential(const Lagrangian& L, StructureId k);

/// The Lagrangian 2-form Phi_L = -d(d_J L), evaluated as an 8n x 8n matrix
/// field with Phi(X,Y) = X^T A(x) Y and
///   A(x) = -1/2 (H(x) J + J H(x)).
/// A(x) is exactly antisymmetric at every state: H J permutes/negates columns
/// of the (exactly symmetric) Hessian and J H rows, so no rounding enters.
class TwoFormField {
 public:
  TwoFormField(Lagrangian L, StructureId k);

  Eigen::MatrixXd matrix_at(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const Lagrangian& lagrangian() const noexcept { return L_; }
  StructureId structure() const noexcept { return k_; }

 private:
  Lagrangian L_;
  StructureId k_;
  SignedBlockPermutation J_;
};

TwoFormField kaehler_form(const Lagrangian& L, StructureId k);

/// Liouville field V_J = J(xi) for a semispray with component vector v.
Eigen::VectorXd liouville_field(StructureId k, const Eigen::Ref<const Eigen::VectorXd>& velocity);

/// Energy E_L = V_J(L) - L = (J v) . grad L(x) - L(x).
double energy(const Lagrangian& L, StructureId k, const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& v);

/// dE_L with the velocity components held constant: the 1-form with numeric
/// coefficients
///   a |-> sum_b (J v)_b H_{ba}(x) - dL/dx_a(x).
class EnergyDifferential {
 public:
  EnergyDifferential(Lagrangian L, StructureId k, Eigen::VectorXd velocity);

  Eigen::VectorXd at(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const Eigen::VectorXd& velocity() const noexcept { return v_; }
  StructureId structure() const noexcept { return k_; }

 private:
  Lagrangian L_;
  StructureId k_;
  Eigen::VectorXd v_;
  Eigen::VectorXd jv_;  // J v, fixed once
};

EnergyDifferential energy_differential(const Lagrangian& L, StructureId k,
                                       Eigen::VectorXd velocity);

}  // namespace ckdyn
