#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vmds/field.hpp"
#include "vmds/matrix.hpp"
#include "vmds/subspace.hpp"

namespace vmds {

/// A systematic (k+r, k, l) vector code over a finite field.
///
/// Nodes 0..k-1 store the information vectors a_j; parity node k+i stores
/// sum_j C(i,j) a_j. All indices are 0-based; documents and reports print
/// them 1-based.
class VectorMdsCode {
public:
  /// `blocks` is the r x k grid in row-major order (parity row, then
  /// systematic column). Throws InvariantViolation when r < 2, l < 2, r does
  /// not divide l, a block is not l x l, or a block is singular.
  VectorMdsCode(Field field, int k, int r, int l, std::vector<Matrix> blocks);

  const Field& field() const noexcept { return field_; }
  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  int l() const noexcept { return l_; }
  int n() const noexcept { return k_ + r_; }
  /// Dimension of every repairing subspace, l / r.
  int sub_dim() const noexcept { return l_ / r_; }

  const Matrix& block(int i, int j) const {
    return blocks_[static_cast<std::size_t>(i * k_ + j)];
  }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

  friend bool operator==(const VectorMdsCode&, const VectorMdsCode&) = default;

private:
  Field field_;
  int k_;
  int r_;
  int l_;
  std::vector<Matrix> blocks_;
};

/// Repairing subspaces S(i,m): for each systematic node m, one subspace per
/// parity node.
class RepairScheme {
public:
  RepairScheme() = default;
  /// `per_node[m][i]` is S(i,m). Every node must list the same number of
  /// subspaces.
  explicit RepairScheme(std::vector<std::vector<Subspace>> per_node);

  /// Scheme where parity nodes 0..r-1 all use S_m for node m.
  static RepairScheme constant(const std::vector<Subspace>& per_node, int r);

  int k() const noexcept { return static_cast<int>(nodes_.size()); }
  int r() const noexcept {
    return nodes_.empty() ? 0 : static_cast<int>(nodes_.front().size());
  }
  const Subspace& subspace(int i, int m) const {
    return nodes_[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
  }
  const std::vector<Subspace>& node(int m) const {
    return nodes_[static_cast<std::size_t>(m)];
  }
  const std::vector<std::vector<Subspace>>& nodes() const noexcept { return nodes_; }

  /// True iff every node uses one subspace for all parities.
  bool is_constant() const;

  friend bool operator==(const RepairScheme&, const RepairScheme&) = default;

private:
  std::vector<std::vector<Subspace>> nodes_;
};

/// Throws InvariantViolation unless the scheme has k nodes, r subspaces per
/// node, each of dimension l/r in F^l.
void validate_scheme(const VectorMdsCode& code, const RepairScheme& scheme);

/// Contents of all n nodes; only produced by encode or decode, so the
/// parities are always consistent with the systematic part.
class DataState {
public:
  const std::vector<Vector>& systematic() const noexcept { return systematic_; }
  const std::vector<Vector>& parity() const noexcept { return parity_; }
  int n() const noexcept {
    return static_cast<int>(systematic_.size() + parity_.size());
  }
  const Vector& node(int idx) const;

  friend bool operator==(const DataState&, const DataState&) = default;

private:
  friend DataState encode(const VectorMdsCode&, std::span<const Vector>);
  std::vector<Vector> systematic_;
  std::vector<Vector> parity_;
};

/// Throws ShapeMismatch on wrong counts/lengths, FieldMismatch on symbols
/// outside the code's field.
DataState encode(const VectorMdsCode& code, std::span<const Vector> systematic);

struct MdsWitness {
  std::vector<int> rows;  // parity rows of the singular block submatrix
  std::vector<int> cols;  // systematic columns
};

struct MdsReport {
  bool mds = true;
  std::optional<MdsWitness> witness;

  explicit operator bool() const noexcept { return mds; }
};

/// Checks that every t x t block submatrix (t = 1..r) of the grid is
/// invertible. The first failing (t, rows, cols) in lexicographic order is
/// returned as witness.
MdsReport is_mds(const VectorMdsCode& code);

/// Node contents with erased nodes set to nullopt.
using PartialState = std::vector<std::optional<Vector>>;

PartialState erase(const DataState& data, std::span<const int> erased);

/// Rebuilds every erased node. Throws TooManyErasures when more than r nodes
/// are missing, NotMds when the surviving parities cannot be inverted.
DataState decode_from_any_k(const VectorMdsCode& code, const PartialState& nodes);

/// C'(i,j) = C(i,j) C(r,j)^{-1}, so the last parity row becomes all identity.
VectorMdsCode normalize_last_row(const VectorMdsCode& code);

bool has_identity_last_row(const VectorMdsCode& code);

} // namespace vmds
