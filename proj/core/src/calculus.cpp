#include "ckdyn/calculus.hpp"

#include <stdexcept>
#include <utility>

namespace ckdyn {

OneForm vertical_differential(const Lagrangian& L, StructureId k) {
  const SignedBlockPermutation J = builtin_structure(k);
  const int n = L.block_size();
  OneForm form;
  form.coeffs.resize(static_cast<std::size_t>(L.dimension()));
  for (int b = 0; b < kBlockCount; ++b) {
    for (int i = 0; i < n; ++i) {
      const int a = b * n + i;
      const int partner = J.target[b] * n + i;
      const ExprPtr& dL = L.gradient_expression(partner);
      form.coeffs[static_cast<std::size_t>(a)] =
          J.sign[b] > 0 ? dL : Expr::neg(dL);
    }
  }
  return form;
}

TwoFormField::TwoFormField(Lagrangian L, StructureId k)
    : L_(std::move(L)), k_(k), J_(builtin_structure(k)) {}

Eigen::MatrixXd TwoFormField::matrix_at(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const int n = L_.block_size();
  const int dim = L_.dimension();
  const Eigen::MatrixXd h = L_.hessian(x);

  // Row action of J needs the inverse permutation: row p of the matrix of J
  // has its entry in column inv[p] with value sign[inv[p]].
  std::array<int, kBlockCount> inv{};
  for (int b = 0; b < kBlockCount; ++b) inv[J_.target[b]] = b;

  // A = -1/2 (H J + J H) assembled through the block permutation:
  //   (H J)_{p,q} = sign[qb] * H_{p, sigma(q)}
  //   (J H)_{p,q} = sign[inv[pb]] * H_{(inv[pb], pi), q}
  Eigen::MatrixXd a(dim, dim);
  for (int p = 0; p < dim; ++p) {
    const int pb = p / n;
    const int rp = inv[pb] * n + p % n;
    for (int q = 0; q < dim; ++q) {
      const int qb = q / n;
      const int sq = J_.target[qb] * n + q % n;
      a(p, q) = -0.5 * (J_.sign[qb] * h(p, sq) + J_.sign[inv[pb]] * h(rp, q));
    }
  }
  return a;
}

TwoFormField kaehler_form(const Lagrangian& L, StructureId k) { return TwoFormField(L, k); }

Eigen::VectorXd liouville_field(StructureId k,
                                const Eigen::Ref<const Eigen::VectorXd>& velocity) {
  return apply(builtin_structure(k), velocity);
}

double energy(const Lagrangian& L, StructureId k, const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() != L.dimension()) {
    throw std::invalid_argument("velocity has " + std::to_string(v.size()) +
                                " components, expected " + std::to_string(L.dimension()));
  }
  const Eigen::VectorXd jv = apply(builtin_structure(k), v);
  return jv.dot(L.gradient(x)) - L.value(x);
}

EnergyDifferential::EnergyDifferential(Lagrangian L, StructureId k, Eigen::VectorXd velocity)
    : L_(std::move(L)), k_(k), v_(std::move(velocity)) {
  if (v_.size() != L_.dimension()) {
    throw std::invalid_argument("velocity has " + std::to_string(v_.size()) +
                                " components, expected " + std::to_string(L_.dimension()));
  }
  jv_ = apply(builtin_structure(k_), v_);
}

Eigen::VectorXd EnergyDifferential::at(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  // H is symmetric, so sum_b (Jv)_b H_{ba} = (H Jv)_a.
  return L_.hessian(x) * jv_ - L_.gradient(x);
}

EnergyDifferential energy_differential(const Lagrangian& L, StructureId k,
                                       Eigen::VectorXd velocity) {
  return EnergyDifferential(L, k, std::move(velocity));
}

}  // namespace ckdyn
