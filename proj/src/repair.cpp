#include "vmds/repair.hpp"

#include <numeric>
#include <sstream>

#include "vmds/analysis.hpp"
#include "vmds/errors.hpp"

namespace vmds {

namespace {

void require_node(const VectorMdsCode& code, int m) {
  if (m < 0 || m >= code.k())
    throw ErasedOutOfRange("node " + std::to_string(m + 1) + " is not in 1.." +
                           std::to_string(code.k()));
}

Matrix own_stack(const VectorMdsCode& code, const RepairScheme& scheme, int m, int target) {
  std::vector<Matrix> parts;
  for (int i = 0; i < code.r(); ++i)
    parts.push_back(matmul(code.field(), scheme.subspace(i, m).basis(), code.block(i, target)));
  return vstack(std::span<const Matrix>(parts));
}

} // namespace

std::string Rational::to_string() const {
  if (is_integer()) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

RepairPlan plan_repair(const VectorMdsCode& code, const RepairScheme& scheme, int m) {
  require_node(code, m);
  try {
    validate_scheme(code, scheme);
  } catch (const InvariantViolation& e) {
    throw InvalidScheme(e.what());
  }
  const Field& f = code.field();
  if (rank(f, own_stack(code, scheme, m, m)) != code.l())
    throw InvalidScheme("node " + std::to_string(m + 1) +
                        ": projected own blocks do not have full rank");

  RepairPlan plan;
  plan.erased = m;
  for (int other = 0; other < code.k(); ++other) {
    if (other == m) continue;
    plan.nodes.push_back(other);
    plan.projections.push_back(row_space(f, own_stack(code, scheme, m, other)).basis());
  }
  for (int i = 0; i < code.r(); ++i) {
    plan.nodes.push_back(code.k() + i);
    plan.projections.push_back(scheme.subspace(i, m).basis());
  }
  return plan;
}

RepairTranscript repair_node(const VectorMdsCode& code, const RepairScheme& scheme,
                             const DataState& data, int m, bool validate) {
  require_node(code, m);
  if (data.n() != code.n()) throw ShapeMismatch("data state does not match the code");
  if (validate) {
    const CheckReport report = check_repair_validity(code, scheme, m);
    if (!report.passed())
      throw InvalidScheme("node " + std::to_string(m + 1) + " fails " +
                          report.violations.front().condition);
  }
  const RepairPlan plan = plan_repair(code, scheme, m);
  const Field& f = code.field();
  const int k = code.k();
  const Index d = code.sub_dim();

  RepairTranscript out;
  out.erased = m;
  for (std::size_t t = 0; t < plan.nodes.size(); ++t) {
    NodeTransmission tx;
    tx.node = plan.nodes[t];
    tx.projection = plan.projections[t];
    tx.symbols = matvec(f, tx.projection, data.node(tx.node));
    tx.transmitted = static_cast<int>(rank(f, tx.projection));
    tx.accessed = static_cast<int>(nonzero_columns(f, tx.projection));
    out.total_bandwidth += tx.transmitted;
    out.total_access += tx.accessed;
    out.transmissions.push_back(std::move(tx));
  }

  // Clean each parity contribution. The systematic projections are RREF, so
  // the coordinates of a row in that basis are its entries at the pivots.
  Vector cleaned(code.l());
  const std::size_t first_parity = static_cast<std::size_t>(k - 1);
  for (int i = 0; i < code.r(); ++i) {
    Vector y = out.transmissions[first_parity + static_cast<std::size_t>(i)].symbols;
    for (std::size_t t = 0; t < first_parity; ++t) {
      const NodeTransmission& tx = out.transmissions[t];
      const Matrix interference =
          matmul(f, scheme.subspace(i, m).basis(), code.block(i, tx.node));
      const auto pivots = rref(f, tx.projection).pivots;
      std::vector<Index> rows(static_cast<std::size_t>(interference.rows()));
      std::iota(rows.begin(), rows.end(), Index{0});
      const Matrix coeffs = submatrix<Elem>(interference, rows, pivots);
      y = sub(f, y, matvec(f, coeffs, tx.symbols));
    }
    cleaned.segment(i * d, d) = y;
  }
  out.reconstructed = matvec(f, inverse(f, own_stack(code, scheme, m, m)), cleaned);
  return out;
}

Rational bandwidth_floor(std::uint64_t n, std::uint64_t k, std::uint64_t l) {
  if (n <= k) throw InvalidParameters("need n > k");
  if (n == 0) throw InvalidParameters("need n >= 1");
  std::uint64_t num = l * (n - 1);
  std::uint64_t den = n - k;
  const std::uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

std::vector<int> access_profile(const VectorMdsCode& code, const RepairScheme& scheme,
                                int m) {
  const RepairPlan plan = plan_repair(code, scheme, m);
  std::vector<int> out;
  for (const auto& p : plan.projections)
    out.push_back(static_cast<int>(nonzero_columns(code.field(), p)));
  return out;
}

std::string render(const RepairTranscript& transcript) {
  std::ostringstream out;
  for (const auto& tx : transcript.transmissions)
    out << "node " << tx.node + 1 << " tx=" << tx.transmitted << " access=" << tx.accessed
        << '\n';
  out << "total bw=" << transcript.total_bandwidth << " access=" << transcript.total_access
      << '\n';
  out << "reconstructed=" << to_string(transcript.reconstructed) << '\n';
  return out.str();
}

} // namespace vmds
