#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "support.hpp"
#include "vmds/combinatorics.hpp"
#include "vmds/errors.hpp"
#include "vmds/field.hpp"
#include "vmds/matrix.hpp"
#include "vmds/subspace.hpp"

using namespace vmds;
using vmds::testing::random_matrix;
using vmds::testing::span_of;

namespace {

// Schoolbook polynomial product reduced by the field's own modulus, on
// coefficient vectors. Independent of the library's packed arithmetic.
std::uint32_t poly_mul_oracle(const Field& f, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t p = f.characteristic();
  const std::uint32_t m = f.degree();
  std::vector<std::uint64_t> x(m), y(m), prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  const auto mod = f.modulus();
  for (std::size_t deg = 2 * m - 1; deg >= m; --deg) {
    const std::uint64_t c = prod[deg];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i <= m; ++i)
      prod[deg - m + i] = (prod[deg - m + i] + (p - c) * mod[i]) % p;
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = m; i-- > 0;) out = out * p + static_cast<std::uint32_t>(prod[i]);
  return out;
}

// Leibniz expansion over all permutations.
Elem det_oracle(const Field& f, const Matrix& m) {
  const auto n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Elem total = f.zero();
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    Elem term = f.one();
    for (int i = 0; i < n; ++i) term = f.mul(term, m(i, perm[static_cast<std::size_t>(i)]));
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// All vectors in the row span, as packed keys.
std::set<std::vector<std::uint32_t>> span_oracle(const Field& f, const Matrix& m) {
  std::set<std::vector<std::uint32_t>> out;
  const auto rows = static_cast<int>(m.rows());
  std::vector<std::uint32_t> coeff(static_cast<std::size_t>(rows), 0);
  while (true) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(m.cols()), 0);
    for (Index j = 0; j < m.cols(); ++j) {
      Elem acc = f.zero();
      for (int i = 0; i < rows; ++i)
        acc = f.add(acc, f.mul(Elem{coeff[static_cast<std::size_t>(i)]}, m(i, j)));
      v[static_cast<std::size_t>(j)] = acc.value;
    }
    out.insert(v);
    int i = rows - 1;
    while (i >= 0 && coeff[static_cast<std::size_t>(i)] == f.order() - 1)
      coeff[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
    ++coeff[static_cast<std::size_t>(i)];
  }
}

Index rank_oracle(const Field& f, const Matrix& m) {
  const auto size = span_oracle(f, m).size();
  Index r = 0;
  for (std::size_t s = 1; s < size; s *= f.order()) ++r;
  return r;
}

} // namespace

TEST(Field, PrimeFieldExamples) {
  const Field f(7);
  EXPECT_EQ(f.name(), "GF(7)");
  EXPECT_EQ(f.order(), 7u);
  EXPECT_TRUE(f.modulus().empty());
  EXPECT_EQ(f.mul(Elem{3}, Elem{5}), Elem{1});
  EXPECT_EQ(f.inv(Elem{5}), Elem{3});
  EXPECT_EQ(f.from_int(-1), Elem{6});
}

TEST(Field, Gf4UsesXSquaredPlusXPlusOne) {
  const Field f(2, 2);
  EXPECT_EQ(f.name(), "GF(2^2)");
  const std::vector<std::uint32_t> expected{1, 1, 1};
  EXPECT_TRUE(std::equal(f.modulus().begin(), f.modulus().end(), expected.begin(),
                         expected.end()));
  // x * x = x + 1; x is encoded 2, x + 1 is 3.
  EXPECT_EQ(f.mul(Elem{2}, Elem{2}), Elem{3});
}

TEST(Field, ConstructionErrors) {
  EXPECT_THROW(Field(4), NotPrime);
  EXPECT_THROW(Field(1), NotPrime);
  EXPECT_THROW(Field(2, 17), OrderTooLarge);
  EXPECT_THROW(Field(257, 2), OrderTooLarge);
  EXPECT_NO_THROW(Field(2, 16));
  EXPECT_THROW(Field(7).inv(Elem{0}), DivideByZero);
  EXPECT_THROW(Field(7).element(7), InvalidParameters);
}

TEST(Field, ModulusIsSmallestMonicIrreducible) {
  // Brute force: a monic degree-m polynomial is reducible iff it is a product
  // of two monic polynomials of lower degree; compare by encoding of the
  // lower coefficients.
  for (auto [p, m] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}, {5u, 2u}, {3u, 3u}}) {
    const Field f(p, m);
    std::uint32_t q = f.order();
    auto reducible = [&](std::uint32_t low) {
      // Products of monic a (deg d) and b (deg m-d), as coefficient vectors.
      for (std::uint32_t d = 1; d < m; ++d) {
        std::uint32_t ca = 1, cb = 1;
        for (std::uint32_t i = 0; i < d; ++i) ca *= p;
        for (std::uint32_t i = 0; i < m - d; ++i) cb *= p;
        for (std::uint32_t a = 0; a < ca; ++a)
          for (std::uint32_t b = 0; b < cb; ++b) {
            std::vector<std::uint32_t> x(d + 1), y(m - d + 1), prod(m + 1, 0);
            std::uint32_t t = a;
            for (std::uint32_t i = 0; i < d; ++i, t /= p) x[i] = t % p;
            x[d] = 1;
            t = b;
            for (std::uint32_t i = 0; i < m - d; ++i, t /= p) y[i] = t % p;
            y[m - d] = 1;
            for (std::size_t i = 0; i < x.size(); ++i)
              for (std::size_t j = 0; j < y.size(); ++j)
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            std::uint32_t enc = 0;
            for (std::uint32_t i = m; i-- > 0;) enc = enc * p + prod[i];
            if (enc == low) return true;
          }
      }
      return false;
    };
    std::uint32_t smallest = q;
    for (std::uint32_t low = 0; low < q && smallest == q; ++low)
      if (!reducible(low)) smallest = low;
    std::uint32_t enc = 0;
    for (std::uint32_t i = m; i-- > 0;) enc = enc * p + f.modulus()[i];
    EXPECT_EQ(enc, smallest) << f.name();
    EXPECT_EQ(f.modulus()[m], 1u);
  }
}

TEST(Field, ExtensionMultiplicationMatchesPolynomialOracle) {
  for (auto [p, m] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 2u}, {2u, 5u}}) {
    const Field f(p, m);
    for (std::uint32_t a = 0; a < f.order(); ++a)
      for (std::uint32_t b = 0; b < f.order(); ++b)
        ASSERT_EQ(f.mul(Elem{a}, Elem{b}).value, poly_mul_oracle(f, a, b))
            << f.name() << " " << a << "*" << b;
  }
}

TEST(FieldProperty, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (const Field& f : {Field(2), Field(7), Field(11), Field(2, 4), Field(3, 3),
                         Field(7, 2), Field(2, 16), Field(65521)}) {
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int trial = 0; trial < 500; ++trial) {
      const Elem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ASSERT_EQ(f.add(a, b), f.add(b, a));
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
      ASSERT_EQ(f.sub(f.add(a, b), b), a);
      ASSERT_EQ(f.mul(a, f.one()), a);
      if (a != f.zero()) {
        ASSERT_EQ(f.mul(a, f.inv(a)), f.one()) << f.name() << " " << a.value;
        ASSERT_EQ(f.pow(a, f.order() - 1), f.one());
        ASSERT_EQ(f.div(f.mul(a, b), a), b);
      }
      ASSERT_EQ(f.pow(a, 3), f.mul(a, f.mul(a, a)));
    }
  }
}

TEST(Matrix, RrefExamples) {
  const Field f(7);
  const auto eye = rref(f, identity(f, 4));
  EXPECT_EQ(eye.reduced, identity(f, 4));
  EXPECT_EQ(eye.pivots, (std::vector<Index>{0, 1, 2, 3}));

  const auto zero = rref(f, zeros(f, 2, 3));
  EXPECT_EQ(zero.reduced, zeros(f, 2, 3));
  EXPECT_TRUE(zero.pivots.empty());

  const auto r = rref(f, from_rows(f, {{2, 4}, {1, 2}}));
  EXPECT_EQ(r.reduced, from_rows(f, {{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<Index>{0}));
}

TEST(Matrix, Figure1BlockDeterminantAndInverse) {
  const Field f(7);
  const Matrix c = from_rows(f, {{1, 5}, {0, 3}});
  EXPECT_EQ(rank(f, identity(f, 5)), 5);
  EXPECT_EQ(det(f, c), Elem{3});
  const Matrix inv = inverse(f, c);
  EXPECT_EQ(inv, from_rows(f, {{1, 3}, {0, 5}}));
  EXPECT_EQ(matmul(f, inv, c), identity(f, 2));
}

TEST(Matrix, ShapeAndSingularErrors) {
  const Field f(5);
  EXPECT_THROW(inverse(f, from_rows(f, {{1, 2}, {2, 4}})), Singular);
  EXPECT_THROW(inverse(f, zeros(f, 2, 3)), ShapeMismatch);
  EXPECT_THROW(det(f, zeros(f, 2, 3)), ShapeMismatch);
  EXPECT_THROW(matmul(f, zeros(f, 2, 3), zeros(f, 2, 3)), ShapeMismatch);
  EXPECT_THROW(vstack({zeros(f, 1, 2), zeros(f, 1, 3)}), ShapeMismatch);
  EXPECT_THROW(from_rows(f, {{1, 2}, {3}}), ShapeMismatch);
  const std::vector<Index> bad{5};
  const std::vector<Index> ok{0};
  EXPECT_THROW(submatrix<Elem>(identity(f, 2), bad, ok), ShapeMismatch);
}

TEST(Matrix, SubmatrixAndStack) {
  const Field f(7);
  const Matrix m = from_rows(f, {{1, 2, 3}, {4, 5, 6}, {0, 1, 2}});
  const std::vector<Index> rows{0, 2};
  const std::vector<Index> cols{1, 2};
  EXPECT_EQ(submatrix<Elem>(m, rows, cols), from_rows(f, {{2, 3}, {1, 2}}));
  EXPECT_EQ(vstack({from_rows(f, {{1, 2}}), from_rows(f, {{3, 4}})}),
            from_rows(f, {{1, 2}, {3, 4}}));
  EXPECT_EQ(to_string(from_rows(f, {{1, 2}, {0, 0}})), "[[1,2],[0,0]]");
  EXPECT_EQ(to_string(from_values(f, {1, 5})), "[1,5]");
}

TEST(MatrixProperty, DeterminantMatchesLeibnizOracle) {
  std::mt19937_64 rng(3);
  for (const Field& f : {Field(2), Field(7), Field(2, 3), Field(3, 2)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Index n = 1 + trial % 5;
      const Matrix m = random_matrix(f, n, n, rng);
      ASSERT_EQ(det(f, m), det_oracle(f, m)) << f.name() << "\n" << to_string(m);
      ASSERT_EQ(det(f, m) != f.zero(), rank(f, m) == n);
    }
  }
}

TEST(MatrixProperty, RankMatchesSpanCountOracle) {
  std::mt19937_64 rng(5);
  for (const Field& f : {Field(2), Field(3), Field(2, 2)}) {
    for (int trial = 0; trial < 150; ++trial) {
      const Index rows = 1 + trial % 4;
      const Index cols = 1 + (trial / 4) % 4;
      const Matrix m = random_matrix(f, rows, cols, rng);
      ASSERT_EQ(rank(f, m), rank_oracle(f, m)) << to_string(m);
      const auto e = rref(f, m);
      // The RREF spans the same space.
      ASSERT_EQ(span_oracle(f, e.reduced), span_oracle(f, m));
      for (std::size_t i = 1; i < e.pivots.size(); ++i) ASSERT_LT(e.pivots[i - 1], e.pivots[i]);
    }
  }
}

TEST(MatrixProperty, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(7);
  for (const Field& f : {Field(2), Field(7), Field(13), Field(2, 8), Field(3, 4)}) {
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const Index n = 1 + trial % 6;
      const Matrix m = random_matrix(f, n, n, rng);
      if (rank(f, m) < n) {
        ASSERT_THROW(inverse(f, m), Singular);
        continue;
      }
      const Matrix inv = inverse(f, m);
      ASSERT_EQ(matmul(f, inv, m), identity(f, n));
      ASSERT_EQ(matmul(f, m, inv), identity(f, n));
      ++checked;
    }
    EXPECT_GT(checked, 50);
  }
}

TEST(MatrixProperty, StackRankIsSubadditive) {
  std::mt19937_64 rng(9);
  const Field f(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix a = random_matrix(f, 1 + trial % 3, 4, rng);
    const Matrix b = random_matrix(f, 1 + trial % 2, 4, rng);
    ASSERT_LE(rank(f, vstack({a, b})), rank(f, a) + rank(f, b));
  }
}

TEST(MatrixProperty, NullSpaceIsTheKernel) {
  std::mt19937_64 rng(13);
  for (const Field& f : {Field(5), Field(2, 2)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix m = random_matrix(f, 1 + trial % 4, 1 + trial % 5, rng);
      const Matrix k = null_space(f, m);
      ASSERT_EQ(k.rows() + rank(f, m), m.cols());
      if (k.rows() > 0) {
        ASSERT_EQ(matmul(f, m, k.transpose()), zeros(f, m.rows(), k.rows()));
        ASSERT_EQ(rank(f, k), k.rows());
      }
    }
  }
}

TEST(Subspace, RowSpaceExamples) {
  const Field f(7);
  const Subspace e1 = span_of(f, {{1, 0}, {1, 0}});
  EXPECT_EQ(e1.dim(), 1);
  EXPECT_EQ(e1.basis(), from_rows(f, {{1, 0}}));
  const Subspace n3 = span_of(f, {{1, 1}});
  EXPECT_EQ(n3.basis(), from_rows(f, {{1, 1}}));
  EXPECT_EQ(row_space(f, from_rows(f, {{1, 5}, {0, 3}})).dim(), 2);
}

TEST(Subspace, ApplyExamples) {
  const Field f(7);
  std::mt19937_64 rng(1);
  const Subspace s = row_space(f, random_matrix(f, 2, 4, rng));
  EXPECT_EQ(subspace_apply(f, s, identity(f, 4)), s);
  const Matrix d = from_rows(f, {{2, 0}, {0, 3}});
  EXPECT_EQ(subspace_apply(f, span_of(f, {{1, 0}}), d), span_of(f, {{1, 0}}));
  EXPECT_EQ(subspace_apply(f, span_of(f, {{1, 1}}), d), span_of(f, {{1, 5}}));
  EXPECT_THROW(subspace_apply(f, s, identity(f, 3)), ShapeMismatch);
}

TEST(Subspace, IntersectSumDirectSumExamples) {
  const Field f(7);
  const Subspace u = span_of(f, {{1, 0, 0}, {0, 1, 0}});
  const Subspace v = span_of(f, {{0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(subspace_intersect(f, u, v), span_of(f, {{0, 1, 0}}));
  EXPECT_EQ(subspace_sum(f, u, v).dim(), 3);
  const std::vector<Subspace> independent{span_of(f, {{1, 0}}), span_of(f, {{0, 1}})};
  EXPECT_TRUE(is_direct_sum(f, std::span<const Subspace>(independent)));
  const std::vector<Subspace> same{span_of(f, {{1, 1}}), span_of(f, {{2, 2}})};
  EXPECT_FALSE(is_direct_sum(f, std::span<const Subspace>(same)));
  EXPECT_THROW(subspace_intersect(f, u, span_of(f, {{1, 0}})), ShapeMismatch);
}

TEST(SubspaceProperty, IntersectionMatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (const Field& f : {Field(2), Field(3)}) {
    for (int trial = 0; trial < 120; ++trial) {
      const Index n = 2 + trial % 3;
      const Subspace u = row_space(f, random_matrix(f, 1 + trial % n, n, rng));
      const Subspace v = row_space(f, random_matrix(f, 1 + (trial / 3) % n, n, rng));
      const auto su = span_oracle(f, u.basis());
      const auto sv = span_oracle(f, v.basis());
      std::set<std::vector<std::uint32_t>> both;
      std::set_intersection(su.begin(), su.end(), sv.begin(), sv.end(),
                            std::inserter(both, both.begin()));
      const Subspace meet = subspace_intersect(f, u, v);
      ASSERT_EQ(span_oracle(f, meet.basis()), both);
      // Modular law.
      ASSERT_EQ(subspace_sum(f, u, v).dim() + meet.dim(), u.dim() + v.dim());
    }
  }
}

TEST(SubspaceProperty, CanonicalFormInvariants) {
  std::mt19937_64 rng(19);
  const Field f(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix m = random_matrix(f, 1 + trial % 4, 5, rng);
    const Subspace s = row_space(f, m);
    ASSERT_EQ(row_space(f, s.basis()), s);
    ASSERT_EQ(rank(f, s.basis()), s.dim());
    // Any invertible change of rows gives the same canonical basis.
    Matrix g = random_matrix(f, m.rows(), m.rows(), rng);
    if (rank(f, g) == m.rows()) ASSERT_EQ(row_space(f, matmul(f, g, m)), s);
    const Matrix c = random_matrix(f, 5, 5, rng);
    if (rank(f, c) == 5) ASSERT_EQ(subspace_apply(f, s, c).dim(), s.dim());
    for (Index i = 0; i < s.basis().rows(); ++i)
      ASSERT_TRUE(contains(f, s, Vector(s.basis().row(i).transpose())));
  }
}

TEST(Combinatorics, BinomialAndCombinations) {
  EXPECT_EQ(binomial(4, 2), 6u);
  EXPECT_EQ(binomial(5, 7), 0u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
  EXPECT_FALSE(binomial(200, 100).has_value());
  const auto c = combinations(4, 2);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.front(), (std::vector<int>{0, 1}));
  EXPECT_EQ(c.back(), (std::vector<int>{2, 3}));
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_EQ(combinations(3, 0).size(), 1u);
}
