#pragma once

#include <span>
#include <vector>

#include "vmds/matrix.hpp"

namespace vmds {

/// A linear subspace of F^n held as the RREF basis of its rows.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// bases are entry-wise identical.
template <class Scalar>
class BasicSubspace {
public:
  BasicSubspace() = default;

  /// Adopts an echelon form, dropping its zero rows.
  explicit BasicSubspace(RowEchelon<Scalar> echelon)
      : basis_(echelon.reduced.topRows(echelon.rank())),
        ambient_(echelon.reduced.cols()),
        pivots_(std::move(echelon.pivots)) {}

  const DenseMatrix<Scalar>& basis() const noexcept { return basis_; }
  Index dim() const noexcept { return basis_.rows(); }
  Index ambient() const noexcept { return ambient_; }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_ == b.basis_;
  }

private:
  DenseMatrix<Scalar> basis_;
  Index ambient_ = 0;
  std::vector<Index> pivots_;
};

using Subspace = BasicSubspace<Elem>;

/// Row space of `m`, canonicalized: RREF with zero rows dropped.
template <FieldArithmetic F, class A>
BasicSubspace<typename F::value_type> row_space(const F& f,
                                                const Eigen::MatrixBase<A>& m) {
  return BasicSubspace<typename F::value_type>(rref(f, m));
}

/// span(e_i : i in coords) in F^n.
template <FieldArithmetic F>
BasicSubspace<typename F::value_type> coordinate_span(const F& f, Index n,
                                                      std::span<const Index> coords) {
  MatrixOver<F> m = zeros(f, static_cast<Index>(coords.size()), n);
  for (std::size_t i = 0; i < coords.size(); ++i)
    m(static_cast<Index>(i), coords[i]) = f.one();
  return row_space(f, m);
}

/// Image S·C of the subspace under right multiplication.
template <FieldArithmetic F, class C>
BasicSubspace<typename F::value_type>
subspace_apply(const F& f, const BasicSubspace<typename F::value_type>& s,
               const Eigen::MatrixBase<C>& c) {
  if (c.rows() != c.cols() || c.rows() != s.ambient())
    throw ShapeMismatch("subspace_apply needs a square matrix of order " +
                        std::to_string(s.ambient()));
  return row_space(f, matmul(f, s.basis(), c));
}

template <FieldArithmetic F>
BasicSubspace<typename F::value_type>
subspace_sum(const F& f, const BasicSubspace<typename F::value_type>& u,
             const BasicSubspace<typename F::value_type>& v) {
  if (u.ambient() != v.ambient()) throw ShapeMismatch("ambient dimensions differ");
  return row_space(f, vstack({u.basis(), v.basis()}));
}

/// U ∩ V from the left kernel of [U; V]: (x, y) with xU = -yV gives xU in both.
template <FieldArithmetic F>
BasicSubspace<typename F::value_type>
subspace_intersect(const F& f, const BasicSubspace<typename F::value_type>& u,
                   const BasicSubspace<typename F::value_type>& v) {
  if (u.ambient() != v.ambient()) throw ShapeMismatch("ambient dimensions differ");
  const MatrixOver<F> stacked = vstack({u.basis(), v.basis()});
  const MatrixOver<F> kernel = null_space(f, stacked.transpose());
  if (kernel.rows() == 0) return row_space(f, zeros(f, 0, u.ambient()));
  return row_space(f, matmul(f, kernel.leftCols(u.dim()), u.basis()));
}

/// True iff the subspaces are independent: rank of the stacked bases equals
/// the sum of their dimensions.
template <FieldArithmetic F>
bool is_direct_sum(const F& f,
                   std::span<const BasicSubspace<typename F::value_type>> parts) {
  if (parts.empty()) return true;
  std::vector<MatrixOver<F>> bases;
  Index total = 0;
  for (const auto& p : parts) {
    if (p.ambient() != parts.front().ambient())
      throw ShapeMismatch("ambient dimensions differ");
    bases.push_back(p.basis());
    total += p.dim();
  }
  return rank(f, vstack(std::span<const MatrixOver<F>>(bases))) == total;
}

template <FieldArithmetic F, class V>
bool contains(const F& f, const BasicSubspace<typename F::value_type>& s,
              const Eigen::MatrixBase<V>& v) {
  MatrixOver<F> row = v.transpose();
  return rank(f, vstack({s.basis(), row})) == s.dim();
}

template <FieldArithmetic F>
bool is_subspace_of(const F& f, const BasicSubspace<typename F::value_type>& inner,
                    const BasicSubspace<typename F::value_type>& outer) {
  return subspace_sum(f, inner, outer).dim() == outer.dim();
}

} // namespace vmds
