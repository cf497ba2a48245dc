#include "vmds/matrix.hpp"

#include <sstream>

namespace vmds {

std::string to_string(const Matrix& m) {
  std::ostringstream out;
  out << '[';
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out << ',';
    out << '[';
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j).value;
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string to_string(const Vector& v) {
  std::ostringstream out;
  out << '[';
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v(i).value;
  }
  out << ']';
  return out.str();
}

} // namespace vmds
