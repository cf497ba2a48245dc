#include "vmds/construct.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "vmds/analysis.hpp"
#include "vmds/combinatorics.hpp"
#include "vmds/errors.hpp"

namespace vmds {

namespace {

void certify_mds_bandwidth(const VectorMdsCode& code, const RepairScheme& scheme,
                           const std::string& what) {
  if (const auto mds = is_mds(code); !mds) throw NotMds(what + " is not MDS");
  if (const auto report = is_optimal_bandwidth(code, scheme); !report.passed())
    throw NotOptimalBandwidth(what + ": " + render(report, "bandwidth"));
}

// Eigenvalue tables for the diagonal family: tables[j](i, d) is the value
// at coordinates whose j-th digit is d in parity row i.
class TableSearch {
public:
  TableSearch(const Field& f, int r, int t, std::uint64_t budget)
      : f_(f), r_(r), t_(t), budget_(budget) {}

  bool run() {
    tables_.assign(static_cast<std::size_t>(t_), Matrix());
    return place(0);
  }

  const std::vector<Matrix>& tables() const { return tables_; }

private:
  bool place(int j) {
    if (j == t_) return true;
    const auto free = static_cast<std::size_t>((r_ - 1) * r_);
    std::vector<std::uint32_t> digits(free, 1);
    Matrix& table = tables_[static_cast<std::size_t>(j)];
    table = Matrix::Constant(r_, r_, f_.one());
    while (true) {
      if (tried_++ >= budget_) return false;
      for (std::size_t e = 0; e < free; ++e)
        table(static_cast<Index>(e) / r_, static_cast<Index>(e) % r_) = Elem{digits[e]};
      if (fits(j) && place(j + 1)) return true;
      if (tried_ >= budget_) return false;
      // Next table in lexicographic order over nonzero values.
      std::size_t e = free;
      while (e > 0 && digits[e - 1] == f_.order() - 1) digits[--e] = 1;
      if (e == 0) return false;
      ++digits[e - 1];
    }
  }

  // Node j's table is invertible and every t x t minor mixing j with earlier
  // nodes is nonzero for every digit choice.
  bool fits(int j) const {
    if (det(f_, tables_[static_cast<std::size_t>(j)]) == f_.zero()) return false;
    for (int t = 2; t <= std::min(r_, j + 1); ++t) {
      const bool ok = for_each_combination(r_, t, [&](const std::vector<int>& rows) {
        return for_each_combination(j, t - 1, [&](const std::vector<int>& earlier) {
          std::vector<int> cols = earlier;
          cols.push_back(j);
          return minors_nonzero(rows, cols);
        });
      });
      if (!ok) return false;
    }
    return true;
  }

  bool minors_nonzero(const std::vector<int>& rows, const std::vector<int>& cols) const {
    const auto t = static_cast<int>(cols.size());
    std::vector<int> digit(static_cast<std::size_t>(t), 0);
    Matrix m(t, t);
    while (true) {
      for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b)
          m(a, b) = tables_[static_cast<std::size_t>(cols[static_cast<std::size_t>(b)])](
              rows[static_cast<std::size_t>(a)], digit[static_cast<std::size_t>(b)]);
      if (det(f_, m) == f_.zero()) return false;
      int p = t - 1;
      while (p >= 0 && digit[static_cast<std::size_t>(p)] == r_ - 1)
        digit[static_cast<std::size_t>(p--)] = 0;
      if (p < 0) return true;
      ++digit[static_cast<std::size_t>(p)];
    }
  }

  const Field& f_;
  int r_;
  int t_;
  std::uint64_t budget_;
  std::uint64_t tried_ = 0;
  std::vector<Matrix> tables_;
};

} // namespace

CodeAndScheme figure1_code() {
  const Field f(7);
  std::vector<Matrix> blocks;
  for (int j = 0; j < 4; ++j) blocks.push_back(identity(f, 2));
  blocks.push_back(from_rows(f, {{1, 5}, {0, 3}}));
  blocks.push_back(from_rows(f, {{1, 0}, {2, 3}}));
  blocks.push_back(from_rows(f, {{2, 0}, {0, 4}}));
  blocks.push_back(from_rows(f, {{5, 0}, {0, 5}}));
  VectorMdsCode code(f, 4, 2, 2, std::move(blocks));

  auto span = [&](std::initializer_list<int> v) { return row_space(f, from_rows(f, {v})); };
  RepairScheme scheme({{span({1, 0}), span({1, 0})},
                       {span({0, 1}), span({0, 1})},
                       {span({1, 1}), span({1, 1})},
                       {span({1, 4}), span({1, 2})}});
  certify_mds_bandwidth(code, scheme, "figure-1 code");
  return {std::move(code), std::move(scheme)};
}

CodeAndScheme diagonal_code(int r, int t, const Field& field, std::uint64_t budget) {
  if (r < 2 || t < 1) throw InvalidParameters("need r >= 2 and t >= 1");
  int l = 1;
  for (int e = 0; e < t; ++e) {
    l *= r;
    if (l > 256) throw InvalidParameters("l = r^t must not exceed 256");
  }

  TableSearch search(field, r, t, budget);
  if (!search.run())
    throw ConstructionFailed("no eigenvalue tables for r=" + std::to_string(r) +
                             " t=" + std::to_string(t) + " over " + field.name());
  const auto& tables = search.tables();

  auto digit = [&](int x, int j) {
    for (int e = 0; e < j; ++e) x /= r;
    return x % r;
  };
  int stride = 1;
  std::vector<Matrix> blocks;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < t; ++j) {
      std::vector<Elem> d(static_cast<std::size_t>(l));
      for (int x = 0; x < l; ++x)
        d[static_cast<std::size_t>(x)] = tables[static_cast<std::size_t>(j)](i, digit(x, j));
      blocks.push_back(diagonal(field, std::span<const Elem>(d)));
    }

  std::vector<Subspace> per_node;
  for (int j = 0; j < t; ++j, stride *= r) {
    Matrix basis = zeros(field, l / r, l);
    Index row = 0;
    for (int x = 0; x < l; ++x) {
      if (digit(x, j) != 0) continue;
      for (int d = 0; d < r; ++d) basis(row, x + d * stride) = field.one();
      ++row;
    }
    per_node.push_back(row_space(field, basis));
  }

  CodeAndScheme out{VectorMdsCode(field, t, r, l, std::move(blocks)),
                    RepairScheme::constant(per_node, r)};
  try {
    certify_mds_bandwidth(out.code, out.scheme, "diagonal code");
  } catch (const Error& e) {
    throw ConstructionFailed(e.what());
  }
  if (!is_optimal_update(out.code) || !out.scheme.is_constant())
    throw ConstructionFailed("diagonal code lost its structure");
  return out;
}

CodeAndScheme constant_scheme_transform(const VectorMdsCode& code,
                                        const RepairScheme& scheme, int d) {
  if (code.k() < 2) throw InvalidParameters("transform needs k >= 2");
  if (d == -1) d = code.k() - 1;
  if (d < 0 || d >= code.k())
    throw InvalidParameters("deleted node " + std::to_string(d + 1) + " out of range");
  if (!is_mds(code)) throw NotMds("input code is not MDS");
  if (const auto report = is_optimal_bandwidth(code, scheme); !report.passed())
    throw NotOptimalBandwidth(render(report, "input bandwidth"));

  const Field& f = code.field();
  const int r = code.r();
  const Matrix& last_d = code.block(r - 1, d);
  std::vector<int> kept;
  for (int m = 0; m < code.k(); ++m)
    if (m != d) kept.push_back(m);

  std::vector<Matrix> blocks;
  for (int j = 0; j < r; ++j) {
    const Matrix left = matmul(f, last_d, inverse(f, code.block(j, d)));
    for (int m : kept)
      blocks.push_back(matmul(f, matmul(f, left, code.block(j, m)),
                              inverse(f, code.block(r - 1, m))));
  }
  std::vector<Subspace> per_node;
  for (int m : kept) per_node.push_back(scheme.subspace(r - 1, m));

  CodeAndScheme out{VectorMdsCode(f, code.k() - 1, r, code.l(), std::move(blocks)),
                    RepairScheme::constant(per_node, r)};
  certify_mds_bandwidth(out.code, out.scheme, "transformed code");
  if (is_optimal_update(code) && !is_optimal_update(out.code))
    throw InvariantViolation("transform lost diagonal structure");
  if (is_optimal_access(scheme) && !is_optimal_access(out.scheme))
    throw InvariantViolation("transform lost basis alignment");
  return out;
}

CodeAndScheme shorten(const VectorMdsCode& code, const RepairScheme& scheme,
                      std::vector<int> keep) {
  if (keep.empty()) throw EmptyKeepSet("keep at least one systematic node");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw InvalidParameters("keep set lists a node twice");
  if (keep.front() < 0 || keep.back() >= code.k())
    throw InvalidParameters("keep set names a node outside 1.." + std::to_string(code.k()));
  validate_scheme(code, scheme);

  std::vector<Matrix> blocks;
  for (int i = 0; i < code.r(); ++i)
    for (int j : keep) blocks.push_back(code.block(i, j));
  std::vector<std::vector<Subspace>> nodes;
  for (int j : keep) nodes.push_back(scheme.node(j));

  CodeAndScheme out{VectorMdsCode(code.field(), static_cast<int>(keep.size()), code.r(),
                                  code.l(), std::move(blocks)),
                    RepairScheme(std::move(nodes))};
  certify_mds_bandwidth(out.code, out.scheme, "shortened code");
  return out;
}

VectorMdsCode random_mds_code(int k, int r, int l, const Field& field, std::uint64_t seed,
                              int attempts) {
  if (k < 0 || r < 2 || l < 2 || l % r != 0)
    throw InvalidParameters("need k >= 0, r >= 2, l >= 2 and r | l");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> symbol(0, field.order() - 1);
  auto random_invertible = [&] {
    while (true) {
      Matrix m(l, l);
      for (Index a = 0; a < l; ++a)
        for (Index b = 0; b < l; ++b) m(a, b) = Elem{symbol(rng)};
      if (rank(field, m) == l) return m;
    }
  };
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Matrix> blocks;
    for (int b = 0; b < r * k; ++b) blocks.push_back(random_invertible());
    VectorMdsCode code(field, k, r, l, std::move(blocks));
    if (is_mds(code)) return code;
  }
  throw BudgetExhausted("no MDS grid in " + std::to_string(attempts) + " attempts over " +
                        field.name());
}

} // namespace vmds
