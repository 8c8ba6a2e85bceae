#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ckdyn {

/// Number of coordinate blocks on R^{8n}. Block b houses coordinates
/// x_{bn}..x_{bn+n-1}.
inline constexpr int kBlockCount = 8;

/// Selects one of the six almost-Clifford structure tensors J_1..J_6.
class StructureId {
 public:
  explicit StructureId(int k);
  int value() const noexcept { return k_; }
  friend bool operator==(StructureId, StructureId) = default;

 private:
  int k_;
};

/// Exact block-level action of a structure tensor on R^{8n}:
///   J e_{(b,i)} = sign[b] * e_{(target[b],i)}
/// for every intra-block index i. Storage is O(1), independent of n.
struct SignedBlockPermutation {
  std::array<int, kBlockCount> target{0, 1, 2, 3, 4, 5, 6, 7};
  std::array<int, kBlockCount> sign{1, 1, 1, 1, 1, 1, 1, 1};

  static SignedBlockPermutation identity() noexcept { return {}; }

  /// True iff target is a bijection of {0..7} and every sign is +1 or -1.
  bool is_valid() const noexcept;

  friend bool operator==(const SignedBlockPermutation&,
                         const SignedBlockPermutation&) = default;
};

/// The exact table of J_k as printed in block -> (sign, target) form.
SignedBlockPermutation builtin_structure(StructureId id) noexcept;

/// Linear extension of the block action to a concrete vector.
/// Exact: each component is relocated and possibly negated, no arithmetic.
/// Throws std::invalid_argument unless v.size() is a positive multiple of 8.
std::vector<double> apply(const SignedBlockPermutation& J, std::span<const double> v);
Eigen::VectorXd apply(const SignedBlockPermutation& J,
                      const Eigen::Ref<const Eigen::VectorXd>& v);

/// Composition a∘b (apply b first): targets chase through, signs multiply.
SignedBlockPermutation compose(const SignedBlockPermutation& a,
                               const SignedBlockPermutation& b) noexcept;

SignedBlockPermutation negated(const SignedBlockPermutation& p) noexcept;
bool is_minus_identity(const SignedBlockPermutation& p) noexcept;

/// All 36 products J_a∘J_b, computed (not assumed) from the builtin tables.
struct CompositionTable {
  /// product[a-1][b-1] = J_a ∘ J_b
  std::array<std::array<SignedBlockPermutation, 6>, 6> product;
};
CompositionTable composition_table() noexcept;

/// Dense 8n x 8n matrix of the permutation, materialized on demand
/// (column c = image of e_c). Entries are exactly -1, 0, or +1.
Eigen::MatrixXd dense_matrix(const SignedBlockPermutation& J, int n);

/// Matrix A of the fundamental 2-form of J_k at block size n:
///   A[r][c] = g(J e_c, e_r),
/// with g the Euclidean metric. Antisymmetric and orthogonal.
Eigen::MatrixXd fundamental_two_form(StructureId id, int n);

/// Executes the metric-compatibility check J^T J = Id in exact integer
/// arithmetic on the block table.
bool check_metric_compatibility(const SignedBlockPermutation& J);

/// "+J3", "-Id", ... if the permutation matches a signed builtin or the
/// identity; std::nullopt otherwise.
std::optional<std::string> classify_against_builtins(const SignedBlockPermutation& p);

/// Compact rendering, e.g. the J_4 table prints as
/// "[+4 -2 +1 -7 -0 +6 -5 +3]".
std::string format_block_table(const SignedBlockPermutation& p);

}  // namespace ckdyn
