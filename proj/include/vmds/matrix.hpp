#pragma once

#include <concepts>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "vmds/errors.hpp"
#include "vmds/field.hpp"

namespace vmds {

using Index = Eigen::Index;

template <class Scalar>
using DenseMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<Elem>;
using Vector = DenseVector<Elem>;

/// Exact arithmetic over a finite field whose elements are `value_type`.
template <class F>
concept FieldArithmetic = requires(const F& f, typename F::value_type a) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
};

template <FieldArithmetic F>
using MatrixOver = DenseMatrix<typename F::value_type>;
template <FieldArithmetic F>
using VectorOver = DenseVector<typename F::value_type>;

/// Reduced row echelon form together with its pivot columns.
template <class Scalar>
struct RowEchelon {
  DenseMatrix<Scalar> reduced;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <FieldArithmetic F>
MatrixOver<F> zeros(const F& f, Index rows, Index cols) {
  return MatrixOver<F>::Constant(rows, cols, f.zero());
}

template <FieldArithmetic F>
MatrixOver<F> identity(const F& f, Index n) {
  MatrixOver<F> out = zeros(f, n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = f.one();
  return out;
}

template <FieldArithmetic F>
MatrixOver<F> diagonal(const F& f, std::span<const typename F::value_type> d) {
  const auto n = static_cast<Index>(d.size());
  MatrixOver<F> out = zeros(f, n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
  return out;
}

/// Builds a matrix from small integers reduced into the prime subfield.
inline Matrix from_rows(const Field& f,
                        std::initializer_list<std::initializer_list<int>> rows) {
  const auto r = static_cast<Index>(rows.size());
  const auto c = r == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  Matrix out(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c)
      throw ShapeMismatch("ragged row list");
    Index j = 0;
    for (int v : row) out(i, j++) = f.from_int(v);
    ++i;
  }
  return out;
}

inline Vector from_values(const Field& f, std::initializer_list<int> values) {
  Vector out(static_cast<Index>(values.size()));
  Index i = 0;
  for (int v : values) out(i++) = f.from_int(v);
  return out;
}

template <FieldArithmetic F, class A, class B>
MatrixOver<F> matmul(const F& f, const Eigen::MatrixBase<A>& a,
                     const Eigen::MatrixBase<B>& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("matmul " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " by " +
                        std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  MatrixOver<F> out = zeros(f, a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index t = 0; t < a.cols(); ++t) {
      const auto lhs = a(i, t);
      if (lhs == f.zero()) continue;
      for (Index j = 0; j < b.cols(); ++j)
        out(i, j) = f.add(out(i, j), f.mul(lhs, b(t, j)));
    }
  return out;
}

template <FieldArithmetic F, class A, class V>
VectorOver<F> matvec(const F& f, const Eigen::MatrixBase<A>& a,
                     const Eigen::MatrixBase<V>& v) {
  if (a.cols() != v.size()) throw ShapeMismatch("matvec dimension mismatch");
  VectorOver<F> out = VectorOver<F>::Constant(a.rows(), f.zero());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index t = 0; t < a.cols(); ++t)
      out(i) = f.add(out(i), f.mul(a(i, t), v(t)));
  return out;
}

template <FieldArithmetic F, class A, class B>
auto add(const F& f, const Eigen::MatrixBase<A>& a,
         const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("add shape mismatch");
  using Scalar = typename F::value_type;
  return a.binaryExpr(b, [&f](Scalar x, Scalar y) { return f.add(x, y); })
      .eval();
}

template <FieldArithmetic F, class A, class B>
auto sub(const F& f, const Eigen::MatrixBase<A>& a,
         const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("sub shape mismatch");
  using Scalar = typename F::value_type;
  return a.binaryExpr(b, [&f](Scalar x, Scalar y) { return f.sub(x, y); })
      .eval();
}

template <FieldArithmetic F, class A>
auto scale(const F& f, typename F::value_type s, const Eigen::MatrixBase<A>& a) {
  using Scalar = typename F::value_type;
  return a.unaryExpr([&f, s](Scalar x) { return f.mul(s, x); }).eval();
}

/// Gauss-Jordan elimination to the unique reduced row echelon form.
template <FieldArithmetic F, class A>
RowEchelon<typename F::value_type> rref(const F& f,
                                        const Eigen::MatrixBase<A>& m) {
  RowEchelon<typename F::value_type> out{m.eval(), {}};
  auto& r = out.reduced;
  Index row = 0;
  for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Index pivot = row;
    while (pivot < r.rows() && r(pivot, col) == f.zero()) ++pivot;
    if (pivot == r.rows()) continue;
    if (pivot != row) r.row(pivot).swap(r.row(row));

    const auto lead_inv = f.inv(r(row, col));
    for (Index j = col; j < r.cols(); ++j) r(row, j) = f.mul(lead_inv, r(row, j));
    for (Index i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      const auto factor = r(i, col);
      if (factor == f.zero()) continue;
      for (Index j = col; j < r.cols(); ++j)
        r(i, j) = f.sub(r(i, j), f.mul(factor, r(row, j)));
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <FieldArithmetic F, class A>
Index rank(const F& f, const Eigen::MatrixBase<A>& m) {
  return rref(f, m).rank();
}

template <FieldArithmetic F, class A>
typename F::value_type det(const F& f, const Eigen::MatrixBase<A>& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("det of non-square matrix");
  MatrixOver<F> a = m.eval();
  auto result = f.one();
  const Index n = a.rows();
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && a(pivot, col) == f.zero()) ++pivot;
    if (pivot == n) return f.zero();
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      result = f.sub(f.zero(), result);
    }
    result = f.mul(result, a(col, col));
    const auto lead_inv = f.inv(a(col, col));
    for (Index i = col + 1; i < n; ++i) {
      const auto factor = f.mul(a(i, col), lead_inv);
      if (factor == f.zero()) continue;
      for (Index j = col; j < n; ++j)
        a(i, j) = f.sub(a(i, j), f.mul(factor, a(col, j)));
    }
  }
  return result;
}

/// Throws Singular for rank-deficient input.
template <FieldArithmetic F, class A>
MatrixOver<F> inverse(const F& f, const Eigen::MatrixBase<A>& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
  const Index n = m.rows();
  MatrixOver<F> augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = identity(f, n);
  auto echelon = rref(f, augmented);
  if (echelon.rank() < n || (n > 0 && echelon.pivots[static_cast<std::size_t>(n - 1)] != n - 1))
    throw Singular("matrix of order " + std::to_string(n) + " is singular");
  return echelon.reduced.rightCols(n);
}

template <class Scalar>
DenseMatrix<Scalar> vstack(std::span<const DenseMatrix<Scalar>> parts) {
  if (parts.empty()) return {};
  const Index cols = parts.front().cols();
  Index rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw ShapeMismatch("vstack column counts differ");
    rows += p.rows();
  }
  DenseMatrix<Scalar> out(rows, cols);
  Index at = 0;
  for (const auto& p : parts) {
    out.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> vstack(std::initializer_list<DenseMatrix<Scalar>> parts) {
  return vstack(std::span<const DenseMatrix<Scalar>>(parts.begin(), parts.size()));
}

template <class Scalar>
DenseMatrix<Scalar> submatrix(const DenseMatrix<Scalar>& m,
                              std::span<const Index> rows,
                              std::span<const Index> cols) {
  DenseMatrix<Scalar> out(static_cast<Index>(rows.size()),
                          static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] < 0 || rows[i] >= m.rows() || cols[j] < 0 || cols[j] >= m.cols())
        throw ShapeMismatch("submatrix index out of range");
      out(static_cast<Index>(i), static_cast<Index>(j)) = m(rows[i], cols[j]);
    }
  return out;
}

/// Basis (as rows) of the right kernel {x : m x = 0}.
template <FieldArithmetic F, class A>
MatrixOver<F> null_space(const F& f, const Eigen::MatrixBase<A>& m) {
  const auto echelon = rref(f, m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : echelon.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  MatrixOver<F> basis = zeros(f, n - echelon.rank(), n);
  Index row = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(row, free) = f.one();
    for (std::size_t t = 0; t < echelon.pivots.size(); ++t)
      basis(row, echelon.pivots[t]) =
          f.sub(f.zero(), echelon.reduced(static_cast<Index>(t), free));
    ++row;
  }
  return basis;
}

template <FieldArithmetic F, class A>
bool is_diagonal(const F& f, const Eigen::MatrixBase<A>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != f.zero()) return false;
  return true;
}

template <FieldArithmetic F, class A>
bool is_identity(const F& f, const Eigen::MatrixBase<A>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? f.one() : f.zero())) return false;
  return true;
}

/// Number of columns holding at least one nonzero entry.
template <FieldArithmetic F, class A>
Index nonzero_columns(const F& f, const Eigen::MatrixBase<A>& m) {
  Index count = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != f.zero()) {
        ++count;
        break;
      }
  return count;
}

std::string to_string(const Matrix& m);
std::string to_string(const Vector& v);

} // namespace vmds
