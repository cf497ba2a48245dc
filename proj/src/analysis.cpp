#include "vmds/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vmds/combinatorics.hpp"
#include "vmds/errors.hpp"

namespace vmds {

namespace {

// stack(S(i,m) C(i,target))_i for the parity rows i.
Matrix projected_stack(const VectorMdsCode& code, const RepairScheme& scheme, int m,
                       int target) {
  std::vector<Matrix> parts;
  parts.reserve(static_cast<std::size_t>(code.r()));
  for (int i = 0; i < code.r(); ++i)
    parts.push_back(matmul(code.field(), scheme.subspace(i, m).basis(),
                           code.block(i, target)));
  return vstack(std::span<const Matrix>(parts));
}

Matrix constant_stack(const VectorMdsCode& code, const Subspace& s, int target) {
  std::vector<Matrix> parts;
  for (int i = 0; i < code.r(); ++i)
    parts.push_back(matmul(code.field(), s.basis(), code.block(i, target)));
  return vstack(std::span<const Matrix>(parts));
}

void require_constant(const RepairScheme& scheme) {
  if (!scheme.is_constant()) throw NotConstant("scheme uses different subspaces per parity");
}

void require_diagonal(const VectorMdsCode& code) {
  if (!is_optimal_update(code)) throw NotDiagonal("code has a non-diagonal encoding block");
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

void CheckReport::add(std::string condition, std::vector<int> where, std::int64_t observed,
                      std::int64_t required) {
  violations.push_back(Violation{std::move(condition), std::move(where),
                                 std::to_string(observed), std::to_string(required)});
}

void CheckReport::merge(const CheckReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

void CheckReport::finish() {
  std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.condition, a.where) < std::tie(b.condition, b.where);
  });
  notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
}

std::string render(const CheckReport& report, const std::string& title) {
  std::ostringstream out;
  out << title << ": " << (report.passed() ? "pass" : "fail") << '\n';
  for (const auto& v : report.violations) {
    out << "  violation " << v.condition << " at (";
    for (std::size_t i = 0; i < v.where.size(); ++i) out << (i ? "," : "") << v.where[i] + 1;
    out << ") observed=" << v.observed << " required=" << v.required << '\n';
  }
  for (const auto& note : report.notes) out << "  note " << note << '\n';
  return out.str();
}

CheckReport check_repair_validity(const VectorMdsCode& code, const RepairScheme& scheme,
                                  int m) {
  validate_scheme(code, scheme);
  if (m < 0 || m >= code.k()) throw ErasedOutOfRange("node " + std::to_string(m + 1));
  const Field& f = code.field();
  CheckReport report;
  for (int target = 0; target < code.k(); ++target) {
    const Index got = rank(f, projected_stack(code, scheme, m, target));
    if (target == m) {
      if (got != code.l()) report.add(condition::kFullRank, {m}, got, code.l());
    } else if (got != code.sub_dim()) {
      report.add(condition::kInterferenceRank, {m, target}, got, code.sub_dim());
    }
  }
  report.finish();
  return report;
}

CheckReport is_optimal_bandwidth(const VectorMdsCode& code, const RepairScheme& scheme) {
  CheckReport report;
  for (int m = 0; m < code.k(); ++m) report.merge(check_repair_validity(code, scheme, m));
  report.finish();
  return report;
}

bool is_constant(const RepairScheme& scheme) { return scheme.is_constant(); }

CheckReport check_invariance(const VectorMdsCode& code, const RepairScheme& scheme) {
  validate_scheme(code, scheme);
  if (!has_identity_last_row(code))
    throw NotNormalized("last parity row must be all identity blocks");
  const Field& f = code.field();
  CheckReport report;
  for (int m = 0; m < code.k(); ++m) {
    const Subspace& target = scheme.subspace(code.r() - 1, m);
    for (int other = 0; other < code.k(); ++other) {
      if (other == m) continue;
      for (int i = 0; i < code.r(); ++i) {
        const Subspace image = subspace_apply(f, scheme.subspace(i, m), code.block(i, other));
        if (!(image == target))
          report.violations.push_back(Violation{condition::kInvariance,
                                                {m, other, i},
                                                to_string(image.basis()),
                                                to_string(target.basis())});
      }
    }
  }
  report.finish();
  return report;
}

bool is_optimal_access(const RepairScheme& scheme) {
  for (const auto& node : scheme.nodes())
    for (const Subspace& s : node) {
      const Matrix& b = s.basis();
      for (Index row = 0; row < b.rows(); ++row) {
        int nonzero = 0;
        for (Index col = 0; col < b.cols(); ++col)
          if (b(row, col) != Elem{0}) {
            if (b(row, col) != Elem{1}) return false;
            ++nonzero;
          }
        if (nonzero != 1) return false;
      }
    }
  return true;
}

bool is_optimal_update(const VectorMdsCode& code) {
  return std::all_of(code.blocks().begin(), code.blocks().end(),
                     [&](const Matrix& c) { return is_diagonal(code.field(), c); });
}

std::string to_string(Family family) {
  switch (family) {
  case Family::general: return "general";
  case Family::diagonal: return "diagonal";
  case Family::access: return "access";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "general") return Family::general;
  if (name == "diagonal") return Family::diagonal;
  if (name == "access") return Family::access;
  throw InvalidParameters("unknown family '" + name + "'");
}

int exact_log(std::uint64_t l, std::uint64_t r) {
  if (r < 2) throw InvalidParameters("r must be at least 2");
  int e = 0;
  std::uint64_t v = 1;
  while (v < l) {
    v *= r;
    ++e;
  }
  if (v != l)
    throw NotPowerOfR(std::to_string(l) + " is not a power of " + std::to_string(r));
  return e;
}

std::uint64_t bound_max_k(std::uint64_t l, std::uint64_t r, Family family,
                          bool constant_scheme) {
  if (r < 2) throw InvalidParameters("r must be at least 2");
  std::uint64_t bound = 0;
  switch (family) {
  case Family::general: {
    if (l % r != 0)
      throw InvalidParameters("r = " + std::to_string(r) + " does not divide l = " +
                              std::to_string(l));
    const auto choose = binomial(l, l / r);
    if (!choose || (*choose != 0 && l > UINT64_MAX / *choose))
      throw std::overflow_error("general bound exceeds 64 bits");
    bound = l * *choose;
    break;
  }
  case Family::diagonal:
    bound = static_cast<std::uint64_t>(exact_log(l, r));
    break;
  case Family::access:
    bound = r * static_cast<std::uint64_t>(exact_log(l, r));
    break;
  }
  return constant_scheme ? bound : bound + 1;
}

std::uint64_t general_lower_bound(std::uint64_t l, std::uint64_t r) {
  return (r + 1) * static_cast<std::uint64_t>(exact_log(l, r));
}

CheckReport intersection_profile(const Field& field, const RepairScheme& scheme,
                                 int max_size) {
  require_constant(scheme);
  CheckReport report;
  const int k = scheme.k();
  if (k == 0) return report;
  const auto l = static_cast<std::int64_t>(scheme.subspace(0, 0).ambient());
  const auto r = static_cast<std::int64_t>(scheme.r());
  if (!is_optimal_access(scheme))
    report.notes.push_back("scheme is not basis-aligned; the bound is a theorem only for "
                           "optimal-access codes");

  // Depth-first over subsets in lexicographic order, carrying the running
  // intersection so each subset costs one intersection.
  std::vector<int> subset;
  std::function<void(int, const Subspace&, std::int64_t)> visit =
      [&](int next, const Subspace& running, std::int64_t limit) {
        for (int m = next; m < k; ++m) {
          const Subspace& s = scheme.subspace(0, m);
          const Subspace here = subset.empty() ? s : subspace_intersect(field, running, s);
          const std::int64_t bound = subset.empty() ? l / r : limit / r;
          subset.push_back(m);
          if (here.dim() > bound) report.add(condition::kIntersection, subset, here.dim(), bound);
          if (static_cast<int>(subset.size()) < max_size) visit(m + 1, here, bound);
          subset.pop_back();
        }
      };
  visit(0, scheme.subspace(0, 0), l);
  report.finish();
  return report;
}

DegreeReport basis_vector_degrees(const Field& field, const RepairScheme& scheme) {
  require_constant(scheme);
  DegreeReport out;
  const int k = scheme.k();
  if (k == 0) return out;
  const Index l = scheme.subspace(0, 0).ambient();
  const int r = scheme.r();
  const int log = exact_log(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(r));
  if (!is_optimal_access(scheme))
    out.report.notes.push_back("scheme is not basis-aligned; degrees count only standard "
                               "basis vectors contained in each subspace and the edge "
                               "count is not checked");

  out.degrees.assign(static_cast<std::size_t>(l), 0);
  for (Index i = 0; i < l; ++i) {
    Vector e = Vector::Constant(l, field.zero());
    e(i) = field.one();
    for (int m = 0; m < k; ++m)
      if (contains(field, scheme.subspace(0, m), e)) ++out.degrees[static_cast<std::size_t>(i)];
  }
  for (Index i = 0; i < l; ++i)
    if (out.degrees[static_cast<std::size_t>(i)] > log)
      out.report.add(condition::kDegree, {static_cast<int>(i)},
                     out.degrees[static_cast<std::size_t>(i)], log);
  // The edge count only has to match when every subspace is a coordinate span.
  const std::int64_t edges = std::accumulate(out.degrees.begin(), out.degrees.end(), 0);
  const std::int64_t expected = static_cast<std::int64_t>(k) * (l / r);
  if (is_optimal_access(scheme) && edges != expected)
    out.report.add(condition::kEdgeCount, {}, edges, expected);
  out.report.finish();
  return out;
}

Partition::Partition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  std::vector<int> seen;
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidParameters("partition has an empty block");
    std::sort(b.begin(), b.end());
    seen.insert(seen.end(), b.begin(), b.end());
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != static_cast<int>(i))
      throw InvalidParameters("partition blocks must be disjoint and cover 0..n-1");
  std::sort(blocks_.begin(), blocks_.end());
  n_ = static_cast<int>(seen.size());
}

Partition Partition::whole(int n) {
  if (n == 0) return Partition();
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return Partition({all});
}

Partition meet(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw InvalidParameters("partitions of different sets");
  std::vector<std::vector<int>> blocks;
  for (const auto& x : a.blocks())
    for (const auto& y : b.blocks())
      if (auto z = intersect_sorted(x, y); !z.empty()) blocks.push_back(std::move(z));
  return Partition(std::move(blocks));
}

Partition meet(const std::vector<Partition>& parts, int n) {
  Partition out = Partition::whole(n);
  for (const auto& p : parts) out = meet(out, p);
  return out;
}

Partition eigen_partition(const Field& field, const Matrix& diagonal_block) {
  if (!is_diagonal(field, diagonal_block)) throw NotDiagonal("block is not diagonal");
  std::map<Elem, std::vector<int>> groups;
  for (Index x = 0; x < diagonal_block.rows(); ++x)
    groups[diagonal_block(x, x)].push_back(static_cast<int>(x));
  std::vector<std::vector<int>> blocks;
  for (auto& [value, coords] : groups) blocks.push_back(std::move(coords));
  return Partition(std::move(blocks));
}

std::vector<Partition> eigen_partitions(const VectorMdsCode& code) {
  require_diagonal(code);
  std::vector<Partition> out;
  for (const auto& c : code.blocks()) out.push_back(eigen_partition(code.field(), c));
  return out;
}

DiagonalStructure diagonal_structure_check(const VectorMdsCode& code,
                                           const RepairScheme& scheme, int m) {
  require_diagonal(code);
  if (!has_identity_last_row(code))
    throw NotNormalized("last parity row must be all identity blocks");
  validate_scheme(code, scheme);
  require_constant(scheme);
  if (m < 0 || m >= code.k()) throw ErasedOutOfRange("node " + std::to_string(m + 1));

  const Field& f = code.field();
  const int l = code.l();
  const int r = code.r();
  const auto partitions = eigen_partitions(code);
  auto partition_of = [&](int i, int j) -> const Partition& {
    return partitions[static_cast<std::size_t>(i * code.k() + j)];
  };

  std::vector<Partition> others;
  std::vector<Partition> own;
  for (int i = 0; i < r; ++i) {
    own.push_back(partition_of(i, m));
    for (int j = 0; j < code.k(); ++j)
      if (j != m) others.push_back(partition_of(i, j));
  }

  DiagonalStructure out{meet(others, l), {}, {}};
  const Partition own_meet = meet(own, l);
  const Subspace& s = scheme.subspace(0, m);

  int total_dim = 0;
  for (const auto& x : out.meet.blocks()) {
    CoordinateGroup group;
    group.coords = x;
    const std::vector<Index> coords(x.begin(), x.end());
    group.piece_dim =
        static_cast<int>(subspace_intersect(f, s, coordinate_span(f, Index{l}, coords)).dim());
    total_dim += group.piece_dim;

    const auto size_x = static_cast<double>(x.size());
    for (const auto& y : own_meet.blocks()) {
      auto z = intersect_sorted(x, y);
      if (z.empty()) continue;
      const double p = static_cast<double>(z.size()) / size_x;
      group.max_probability = std::max(group.max_probability, p);
      group.entropy -= p * std::log(p) / std::log(static_cast<double>(r));
      if (static_cast<std::size_t>(r) * z.size() > x.size())
        out.report.add(condition::kBlockSize, {m, x.front(), z.front()},
                       static_cast<std::int64_t>(z.size()),
                       static_cast<std::int64_t>(x.size()) / r);
      group.blocks.push_back(std::move(z));
    }
    if (group.entropy < 1.0 - 1e-9)
      out.report.violations.push_back(Violation{condition::kEntropyFloor,
                                                {m, x.front()},
                                                fmt(group.entropy),
                                                "1"});
    out.groups.push_back(std::move(group));
  }
  if (total_dim != s.dim())
    out.report.add(condition::kDecomposition, {m}, total_dim, s.dim());
  out.report.finish();
  return out;
}

DeterminantCriterion determinant_criterion(const VectorMdsCode& code,
                                           const RepairScheme& scheme) {
  validate_scheme(code, scheme);
  require_constant(scheme);
  const Field& f = code.field();
  const int k = code.k();
  const int l = code.l();
  const int size = code.sub_dim() + 1;
  std::vector<Index> rows(static_cast<std::size_t>(size));
  std::iota(rows.begin(), rows.end(), Index{l - size});

  DeterminantCriterion out;
  out.values = zeros(f, k, k);
  for (int m = 0; m < k; ++m) {
    const Matrix own = constant_stack(code, scheme.subspace(0, m), m);
    std::vector<Index> chosen;
    for_each_combination(l, size, [&](const std::vector<int>& cols) {
      std::vector<Index> idx(cols.begin(), cols.end());
      if (det(f, submatrix<Elem>(own, rows, idx)) == f.zero()) return true;
      chosen = std::move(idx);
      return false;
    });
    if (chosen.empty())
      throw NoValidIndexSet("no invertible " + std::to_string(size) + "x" +
                            std::to_string(size) + " minor for node " + std::to_string(m + 1));
    out.index_sets.emplace_back(chosen.begin(), chosen.end());

    for (int other = 0; other < k; ++other) {
      const Matrix stack = constant_stack(code, scheme.subspace(0, other), m);
      const Elem value = det(f, submatrix<Elem>(stack, rows, chosen));
      out.values(m, other) = value;
      const bool nonzero = value != f.zero();
      if (nonzero != (other == m))
        out.report.violations.push_back(Violation{condition::kDeterminantPattern,
                                                  {m, other},
                                                  nonzero ? "nonzero" : "0",
                                                  other == m ? "nonzero" : "0"});
    }
  }
  out.report.finish();
  return out;
}

} // namespace vmds
