#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vmds/analysis.hpp"
#include "vmds/code.hpp"
#include "vmds/construct.hpp"

namespace vmds::testing {

inline Vector random_vector(const Field& f, Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> symbol(0, f.order() - 1);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = Elem{symbol(rng)};
  return v;
}

inline Matrix random_matrix(const Field& f, Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> symbol(0, f.order() - 1);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Elem{symbol(rng)};
  return m;
}

inline std::vector<Vector> random_data(const VectorMdsCode& code, std::mt19937_64& rng) {
  std::vector<Vector> out;
  for (int j = 0; j < code.k(); ++j) out.push_back(random_vector(code.field(), code.l(), rng));
  return out;
}

inline Subspace span_of(const Field& f, std::initializer_list<std::initializer_list<int>> rows) {
  return row_space(f, from_rows(f, rows));
}

struct Fixture {
  std::string name;
  CodeAndScheme built;
};

// Every checker-verified code the suites exercise.
inline std::vector<Fixture> verified_fixtures() {
  const CodeAndScheme fig = figure1_code();
  std::vector<Fixture> out;
  out.push_back({"figure1", fig});
  out.push_back({"figure1 keep 1,2", shorten(fig.code, fig.scheme, {0, 1})});
  out.push_back({"figure1 keep 3,4", shorten(fig.code, fig.scheme, {2, 3})});
  out.push_back({"figure1 transformed", constant_scheme_transform(fig.code, fig.scheme)});
  out.push_back({"diagonal r2 t1", diagonal_code(2, 1, Field(5))});
  out.push_back({"diagonal r2 t2", diagonal_code(2, 2, Field(5))});
  out.push_back({"diagonal r2 t3", diagonal_code(2, 3, Field(7))});
  out.push_back({"diagonal r3 t1", diagonal_code(3, 1, Field(7))});
  out.push_back({"diagonal r3 t2", diagonal_code(3, 2, Field(13))});
  out.push_back({"diagonal r2 t2 GF(3^2)", diagonal_code(2, 2, Field(3, 2))});
  return out;
}

} // namespace vmds::testing
