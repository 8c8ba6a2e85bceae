#include "ckdyn/structures.hpp"

#include <stdexcept>

namespace ckdyn {

namespace {

// The six builtin tables, block b -> (sign, target). Transcribed row by row
// from the basis actions; builtin_structure() is the single source of truth
// for them in this codebase.
constexpr std::array<SignedBlockPermutation, 6> kBuiltins = {{
    // J1
    {{1, 0, 4, 5, 2, 3, 7, 6}, {+1, -1, +1, +1, -1, -1, +1, -1}},
    // J2
    {{2, 4, 0, 6, 1, 7, 3, 5}, {+1, -1, -1, +1, +1, -1, -1, +1}},
    // J3
    {{3, 5, 6, 0, 7, 1, 2, 4}, {+1, -1, -1, -1, +1, +1, +1, -1}},
    // J4
    {{4, 2, 1, 7, 0, 6, 5, 3}, {+1, -1, +1, -1, -1, +1, -1, +1}},
    // J5
    {{5, 3, 7, 1, 6, 0, 4, 2}, {+1, -1, -1, +1, +1, -1, -1, +1}},
    // J6
    {{6, 7, 3, 2, 5, 4, 0, 1}, {+1, -1, -1, +1, +1, -1, -1, +1}},
}};

}  // namespace

StructureId::StructureId(int k) : k_(k) {
  if (k < 1 || k > 6) {
    throw std::out_of_range("structure id must be in 1..6, got " + std::to_string(k));
  }
}

bool SignedBlockPermutation::is_valid() const noexcept {
  std::array<bool, kBlockCount> seen{};
  for (int b = 0; b < kBlockCount; ++b) {
    if (target[b] < 0 || target[b] >= kBlockCount) return false;
    if (seen[target[b]]) return false;
    seen[target[b]] = true;
    if (sign[b] != 1 && sign[b] != -1) return false;
  }
  return true;
}

SignedBlockPermutation builtin_structure(StructureId id) noexcept {
  return kBuiltins[static_cast<std::size_t>(id.value() - 1)];
}

std::vector<double> apply(const SignedBlockPermutation& J, std::span<const double> v) {
  if (v.empty() || v.size() % kBlockCount != 0) {
    throw std::invalid_argument("vector length must be a positive multiple of 8, got " +
                                std::to_string(v.size()));
  }
  const std::size_t n = v.size() / kBlockCount;
  std::vector<double> out(v.size());
  for (int b = 0; b < kBlockCount; ++b) {
    const std::size_t src = static_cast<std::size_t>(b) * n;
    const std::size_t dst = static_cast<std::size_t>(J.target[b]) * n;
    for (std::size_t i = 0; i < n; ++i) {
      out[dst + i] = J.sign[b] > 0 ? v[src + i] : -v[src + i];
    }
  }
  return out;
}

Eigen::VectorXd apply(const SignedBlockPermutation& J,
                      const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0 || v.size() % kBlockCount != 0) {
    throw std::invalid_argument("vector length must be a positive multiple of 8, got " +
                                std::to_string(v.size()));
  }
  const Eigen::Index n = v.size() / kBlockCount;
  Eigen::VectorXd out(v.size());
  for (int b = 0; b < kBlockCount; ++b) {
    const Eigen::Index src = b * n;
    const Eigen::Index dst = J.target[b] * n;
    for (Eigen::Index i = 0; i < n; ++i) {
      out[dst + i] = J.sign[b] > 0 ? v[src + i] : -v[src + i];
    }
  }
  return out;
}

SignedBlockPermutation compose(const SignedBlockPermutation& a,
                               const SignedBlockPermutation& b) noexcept {
  SignedBlockPermutation out;
  for (int blk = 0; blk < kBlockCount; ++blk) {
    const int mid = b.target[blk];
    out.target[blk] = a.target[mid];
    out.sign[blk] = a.sign[mid] * b.sign[blk];
  }
  return out;
}

SignedBlockPermutation negated(const SignedBlockPermutation& p) noexcept {
  SignedBlockPermutation out = p;
  for (int b = 0; b < kBlockCount; ++b) out.sign[b] = -out.sign[b];
  return out;
}

bool is_minus_identity(const SignedBlockPermutation& p) noexcept {
  return p == negated(SignedBlockPermutation::identity());
}

CompositionTable composition_table() noexcept {
  CompositionTable table;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      table.product[a][b] = compose(kBuiltins[a], kBuiltins[b]);
    }
  }
  return table;
}

Eigen::MatrixXd dense_matrix(const SignedBlockPermutation& J, int n) {
  if (n < 1) throw std::invalid_argument("block size n must be >= 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(kBlockCount) * n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < kBlockCount; ++b) {
    for (Eigen::Index i = 0; i < n; ++i) {
      m(J.target[b] * n + i, b * n + i) = static_cast<double>(J.sign[b]);
    }
  }
  return m;
}

Eigen::MatrixXd fundamental_two_form(StructureId id, int n) {
  // A[r][c] = g(J e_c, e_r), i.e. the r-th component of J e_c, which is the
  // dense matrix of J itself.
  return dense_matrix(builtin_structure(id), n);
}

bool check_metric_compatibility(const SignedBlockPermutation& J) {
  // (J^T J)[p][q] = sum_b J[b][p] J[b][q] over the 8x8 integer block matrix.
  int m[kBlockCount][kBlockCount] = {};
  for (int b = 0; b < kBlockCount; ++b) {
    if (J.target[b] < 0 || J.target[b] >= kBlockCount) return false;
    m[J.target[b]][b] = J.sign[b];
  }
  for (int p = 0; p < kBlockCount; ++p) {
    for (int q = 0; q < kBlockCount; ++q) {
      int acc = 0;
      for (int b = 0; b < kBlockCount; ++b) acc += m[b][p] * m[b][q];
      if (acc != (p == q ? 1 : 0)) return false;
    }
  }
  return true;
}

std::optional<std::string> classify_against_builtins(const SignedBlockPermutation& p) {
  const auto id = SignedBlockPermutation::identity();
  if (p == id) return "+Id";
  if (p == negated(id)) return "-Id";
  for (int k = 0; k < 6; ++k) {
    if (p == kBuiltins[k]) return "+J" + std::to_string(k + 1);
    if (p == negated(kBuiltins[k])) return "-J" + std::to_string(k + 1);
  }
  return std::nullopt;
}

std::string format_block_table(const SignedBlockPermutation& p) {
  std::string out = "[";
  for (int b = 0; b < kBlockCount; ++b) {
    if (b > 0) out += ' ';
    out += p.sign[b] > 0 ? '+' : '-';
    out += std::to_string(p.target[b]);
  }
  out += ']';
  return out;
}

}  // namespace ckdyn
