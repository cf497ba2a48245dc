#include "vmds/code.hpp"

#include <algorithm>
#include <string>

#include "vmds/combinatorics.hpp"
#include "vmds/errors.hpp"

namespace vmds {

namespace {

std::string at(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// tl x tl matrix made of the blocks C(rows[a], cols[b]).
Matrix block_submatrix(const VectorMdsCode& code, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  const Index l = code.l();
  const auto t = static_cast<Index>(rows.size());
  Matrix out(t * l, t * l);
  for (Index a = 0; a < t; ++a)
    for (Index b = 0; b < t; ++b)
      out.block(a * l, b * l, l, l) =
          code.block(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
  return out;
}

bool all_diagonal(const VectorMdsCode& code) {
  return std::all_of(code.blocks().begin(), code.blocks().end(),
                     [&](const Matrix& m) { return is_diagonal(code.field(), m); });
}

} // namespace

VectorMdsCode::VectorMdsCode(Field field, int k, int r, int l,
                             std::vector<Matrix> blocks)
    : field_(std::move(field)), k_(k), r_(r), l_(l), blocks_(std::move(blocks)) {
  if (k < 0) throw InvariantViolation("k must be non-negative");
  if (r < 2) throw InvariantViolation("r must be at least 2, got " + std::to_string(r));
  if (l < 2) throw InvariantViolation("l must be at least 2, got " + std::to_string(l));
  if (l % r != 0)
    throw InvariantViolation("r = " + std::to_string(r) + " does not divide l = " +
                             std::to_string(l));
  if (blocks_.size() != static_cast<std::size_t>(r * k))
    throw InvariantViolation("expected " + std::to_string(r * k) + " blocks, got " +
                             std::to_string(blocks_.size()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) {
      const Matrix& c = block(i, j);
      if (c.rows() != l || c.cols() != l)
        throw InvariantViolation("block C" + at(i, j) + " is not " +
                                 std::to_string(l) + "x" + std::to_string(l));
      for (Index a = 0; a < l; ++a)
        for (Index b = 0; b < l; ++b)
          if (!field_.contains(c(a, b)))
            throw InvariantViolation("block C" + at(i, j) + " has a symbol outside " +
                                     field_.name());
      if (rank(field_, c) != l)
        throw InvariantViolation("block C" + at(i, j) + " is singular");
    }
}

RepairScheme::RepairScheme(std::vector<std::vector<Subspace>> per_node)
    : nodes_(std::move(per_node)) {
  for (const auto& node : nodes_)
    if (node.size() != nodes_.front().size())
      throw InvariantViolation("scheme nodes list different numbers of subspaces");
}

RepairScheme RepairScheme::constant(const std::vector<Subspace>& per_node, int r) {
  std::vector<std::vector<Subspace>> nodes;
  nodes.reserve(per_node.size());
  for (const auto& s : per_node)
    nodes.emplace_back(static_cast<std::size_t>(r), s);
  return RepairScheme(std::move(nodes));
}

bool RepairScheme::is_constant() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const auto& node) {
    return std::all_of(node.begin(), node.end(),
                       [&](const Subspace& s) { return s == node.front(); });
  });
}

void validate_scheme(const VectorMdsCode& code, const RepairScheme& scheme) {
  if (scheme.k() != code.k())
    throw InvariantViolation("scheme covers " + std::to_string(scheme.k()) +
                             " nodes, code has k = " + std::to_string(code.k()));
  if (scheme.k() > 0 && scheme.r() != code.r())
    throw InvariantViolation("scheme lists " + std::to_string(scheme.r()) +
                             " subspaces per node, code has r = " +
                             std::to_string(code.r()));
  for (int m = 0; m < scheme.k(); ++m)
    for (int i = 0; i < scheme.r(); ++i) {
      const Subspace& s = scheme.subspace(i, m);
      if (s.ambient() != code.l() || s.dim() != code.sub_dim())
        throw InvariantViolation("S" + at(i, m) + " has dimension " +
                                 std::to_string(s.dim()) + " in F^" +
                                 std::to_string(s.ambient()) + ", expected " +
                                 std::to_string(code.sub_dim()) + " in F^" +
                                 std::to_string(code.l()));
    }
}

const Vector& DataState::node(int idx) const {
  const auto k = static_cast<int>(systematic_.size());
  if (idx < 0 || idx >= n()) throw ShapeMismatch("node index out of range");
  return idx < k ? systematic_[static_cast<std::size_t>(idx)]
                 : parity_[static_cast<std::size_t>(idx - k)];
}

DataState encode(const VectorMdsCode& code, std::span<const Vector> systematic) {
  const Field& f = code.field();
  if (systematic.size() != static_cast<std::size_t>(code.k()))
    throw ShapeMismatch("expected " + std::to_string(code.k()) +
                        " systematic vectors, got " + std::to_string(systematic.size()));
  for (const auto& a : systematic) {
    if (a.size() != code.l())
      throw ShapeMismatch("systematic vector of length " + std::to_string(a.size()) +
                          ", expected " + std::to_string(code.l()));
    for (Index t = 0; t < a.size(); ++t)
      if (!f.contains(a(t)))
        throw FieldMismatch("symbol " + std::to_string(a(t).value) + " outside " +
                            f.name());
  }

  DataState out;
  out.systematic_.assign(systematic.begin(), systematic.end());
  for (int i = 0; i < code.r(); ++i) {
    Vector parity = Vector::Constant(code.l(), f.zero());
    for (int j = 0; j < code.k(); ++j)
      parity = add(f, parity, matvec(f, code.block(i, j),
                                     systematic[static_cast<std::size_t>(j)]));
    out.parity_.push_back(std::move(parity));
  }
  return out;
}

MdsReport is_mds(const VectorMdsCode& code) {
  const Field& f = code.field();
  const bool diagonal = all_diagonal(code);
  MdsReport report;
  for (int t = 1; t <= std::min(code.r(), code.k()) && report.mds; ++t) {
    for_each_combination(code.r(), t, [&](const std::vector<int>& rows) {
      return for_each_combination(code.k(), t, [&](const std::vector<int>& cols) {
        bool invertible = true;
        if (diagonal) {
          // Diagonal blocks: the block submatrix is permutation-similar to a
          // direct sum of t x t scalar matrices, one per coordinate.
          Matrix scalar(t, t);
          for (Index x = 0; x < code.l() && invertible; ++x) {
            for (int a = 0; a < t; ++a)
              for (int b = 0; b < t; ++b)
                scalar(a, b) = code.block(rows[static_cast<std::size_t>(a)],
                                          cols[static_cast<std::size_t>(b)])(x, x);
            invertible = det(f, scalar) != f.zero();
          }
        } else {
          invertible = rank(f, block_submatrix(code, rows, cols)) == t * code.l();
        }
        if (!invertible) {
          report.mds = false;
          report.witness = MdsWitness{rows, cols};
        }
        return invertible;
      });
    });
  }
  return report;
}

PartialState erase(const DataState& data, std::span<const int> erased) {
  PartialState out;
  for (int idx = 0; idx < data.n(); ++idx) out.emplace_back(data.node(idx));
  for (int idx : erased) {
    if (idx < 0 || idx >= data.n()) throw ShapeMismatch("erased node out of range");
    out[static_cast<std::size_t>(idx)].reset();
  }
  return out;
}

DataState decode_from_any_k(const VectorMdsCode& code, const PartialState& nodes) {
  const Field& f = code.field();
  const int k = code.k();
  const Index l = code.l();
  if (nodes.size() != static_cast<std::size_t>(code.n()))
    throw ShapeMismatch("expected " + std::to_string(code.n()) + " node slots");

  std::vector<int> lost_systematic;
  std::vector<int> live_parity;
  int erased = 0;
  for (int idx = 0; idx < code.n(); ++idx) {
    const auto& slot = nodes[static_cast<std::size_t>(idx)];
    if (!slot) {
      ++erased;
      if (idx < k) lost_systematic.push_back(idx);
    } else {
      if (slot->size() != l) throw ShapeMismatch("node vector has wrong length");
      if (idx >= k) live_parity.push_back(idx - k);
    }
  }
  if (erased > code.r())
    throw TooManyErasures(std::to_string(erased) + " erasures exceed r = " +
                          std::to_string(code.r()));

  std::vector<Vector> systematic;
  for (int j = 0; j < k; ++j) {
    const auto& slot = nodes[static_cast<std::size_t>(j)];
    systematic.push_back(slot ? *slot : Vector::Constant(l, f.zero()));
  }

  const auto t = static_cast<int>(lost_systematic.size());
  if (t > 0) {
    // Use the first t surviving parities: their residuals after removing the
    // known systematic contributions are a block system in the lost vectors.
    const std::vector<int> rows(live_parity.begin(), live_parity.begin() + t);
    Matrix system = block_submatrix(code, rows, lost_systematic);
    Vector rhs(t * l);
    for (int a = 0; a < t; ++a) {
      const int i = rows[static_cast<std::size_t>(a)];
      Vector residual = *nodes[static_cast<std::size_t>(k + i)];
      for (int j = 0; j < k; ++j) {
        if (!nodes[static_cast<std::size_t>(j)]) continue;
        residual = sub(f, residual, matvec(f, code.block(i, j),
                                           systematic[static_cast<std::size_t>(j)]));
      }
      rhs.segment(a * l, l) = residual;
    }
    Matrix solver;
    try {
      solver = inverse(f, system);
    } catch (const Singular&) {
      throw NotMds("surviving parities cannot recover the lost nodes");
    }
    const Vector solution = matvec(f, solver, rhs);
    for (int a = 0; a < t; ++a)
      systematic[static_cast<std::size_t>(lost_systematic[static_cast<std::size_t>(a)])] =
          solution.segment(a * l, l);
  }
  return encode(code, systematic);
}

VectorMdsCode normalize_last_row(const VectorMdsCode& code) {
  const Field& f = code.field();
  std::vector<Matrix> blocks;
  blocks.reserve(code.blocks().size());
  std::vector<Matrix> last_inv;
  for (int j = 0; j < code.k(); ++j)
    last_inv.push_back(inverse(f, code.block(code.r() - 1, j)));
  for (int i = 0; i < code.r(); ++i)
    for (int j = 0; j < code.k(); ++j)
      blocks.push_back(i == code.r() - 1
                           ? identity(f, code.l())
                           : matmul(f, code.block(i, j), last_inv[static_cast<std::size_t>(j)]));
  return VectorMdsCode(f, code.k(), code.r(), code.l(), std::move(blocks));
}

bool has_identity_last_row(const VectorMdsCode& code) {
  for (int j = 0; j < code.k(); ++j)
    if (!is_identity(code.field(), code.block(code.r() - 1, j))) return false;
  return true;
}

} // namespace vmds
