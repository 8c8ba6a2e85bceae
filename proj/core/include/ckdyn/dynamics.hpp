#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ckdyn/calculus.hpp"
#include "ckdyn/errors.hpp"
#include "ckdyn/lagrangian.hpp"
#include "ckdyn/structures.hpp"

namespace ckdyn {

/// Hessian condition estimate above which a state counts as degenerate.
inline constexpr double kDegeneracyThreshold = 1e12;

/// The Euler-Lagrange system induced by a structure: for each block b the
/// equation
///   d/dt(dL/dx_{(b,i)}) + sign[b] * dL/dx_{(target[b],i)} = 0.
/// The pairing (sigma, s) is exactly the structure's signed permutation; the
/// six systems are this one formula instantiated six times.
class ELSystem {
 public:
  explicit ELSystem(StructureId k);

  StructureId structure() const noexcept { return k_; }
  const SignedBlockPermutation& pairing() const noexcept { return table_; }

  int partner_block(int block) const;
  int equation_sign(int block) const;

  /// Per-coordinate pairing (sigma(a), s(a)) for block size n.
  std::pair<int, int> coordinate_pairing(int a, int n) const;

  /// One equation per line, blocks in order 0..7:
  ///   "d/dt(dL/dx_i) + dL/dx_{4n+i} = 0"
  std::string pretty() const;

 private:
  StructureId k_;
  SignedBlockPermutation table_;
};

ELSystem derive_el_system(StructureId k);

struct SolveReport {
  /// ||H^-1||_1 * max(1, ||H||_1): the usual 1-norm condition number for
  /// Hessians of at least unit scale, and the inverse norm itself for tiny
  /// ones, so that a vanishing Hessian scale is flagged even when kappa = 1.
  double condition_estimate = 0.0;
};

/// Solves H(x) v = J_k grad L(x) for the semispray velocity at x with a
/// partially pivoted LU factorization plus one step of iterative refinement.
/// Throws DegenerateLagrangian when the factorization fails outright or the
/// condition estimate exceeds kDegeneracyThreshold.
Eigen::VectorXd solve_semispray(const Lagrangian& L, StructureId k,
                                const Eigen::Ref<const Eigen::VectorXd>& x,
                                SolveReport* report = nullptr);

/// The solved velocity field x -> v(x) for a fixed Lagrangian and structure.
/// Evaluation is pure; the conditioning report is per-call output.
class SemisprayField {
 public:
  SemisprayField(Lagrangian L, StructureId k) : L_(std::move(L)), k_(k) {}

  Eigen::VectorXd velocity(const Eigen::Ref<const Eigen::VectorXd>& x,
                           SolveReport* report = nullptr) const {
    return solve_semispray(L_, k_, x, report);
  }

  const Lagrangian& lagrangian() const noexcept { return L_; }
  StructureId structure() const noexcept { return k_; }

 private:
  Lagrangian L_;
  StructureId k_;
};

/// Pointwise Euler-Lagrange residual
///   residual_a = sum_b H_{ab}(x) v_b + s(a) dL/dx_{sigma(a)}(x);
/// zero iff (x, v) satisfies the EL system at x.
Eigen::VectorXd el_residual(const Lagrangian& L, StructureId k,
                            const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Eigen::Ref<const Eigen::VectorXd>& v);

/// Residual norm of the unreduced dynamics equation i_xi Phi_L = dE_L,
/// assembled independently of the solver from kaehler_form and
/// energy_differential. The contraction uses the form's full (un-halved)
/// coefficient sum, i.e. the left side is -2 A(x) v.
double dynamics_residual(const Lagrangian& L, StructureId k,
                         const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace ckdyn
