#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmds/code.hpp"

namespace vmds {

/// One failed condition. `where` holds 0-based node/row indices; rendering
/// prints them 1-based.
struct Violation {
  std::string condition;
  std::vector<int> where;
  std::string observed;
  std::string required;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Every violation found, sorted by condition id then indices. Notes carry
/// caller-facing remarks that do not affect the verdict.
struct CheckReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool passed() const noexcept { return violations.empty(); }
  void add(std::string condition, std::vector<int> where, std::int64_t observed,
           std::int64_t required);
  void merge(const CheckReport& other);
  void finish();
};

std::string render(const CheckReport& report, const std::string& title);

// Condition ids used in reports.
namespace condition {
inline constexpr const char* kFullRank = "repair-full-rank";
inline constexpr const char* kInterferenceRank = "interference-rank";
inline constexpr const char* kInvariance = "invariance";
inline constexpr const char* kIntersection = "intersection-dim";
inline constexpr const char* kDegree = "basis-degree";
inline constexpr const char* kEdgeCount = "edge-count";
inline constexpr const char* kNotAligned = "not-basis-aligned";
inline constexpr const char* kDecomposition = "decomposition";
inline constexpr const char* kBlockSize = "block-size";
inline constexpr const char* kEntropyFloor = "entropy-floor";
inline constexpr const char* kDeterminantPattern = "determinant-pattern";
} // namespace condition

/// Node m is repairable at optimal bandwidth: rank(S(i,m)C(i,m))_i = l and,
/// for every m' != m, rank(S(i,m)C(i,m'))_i = l/r.
CheckReport check_repair_validity(const VectorMdsCode& code, const RepairScheme& scheme,
                                  int m);

/// check_repair_validity for every systematic node.
CheckReport is_optimal_bandwidth(const VectorMdsCode& code, const RepairScheme& scheme);

bool is_constant(const RepairScheme& scheme);

/// With the last parity row normalized to identity, optimal bandwidth forces
/// S(i,m)C(i,m') = S(r,m) for all i and m' != m (for constant schemes: S_m
/// is invariant under every C(i,m')). Throws NotNormalized.
CheckReport check_invariance(const VectorMdsCode& code, const RepairScheme& scheme);

/// Every repairing subspace is spanned by standard basis vectors.
bool is_optimal_access(const RepairScheme& scheme);

/// Implemented special case of optimal update: every encoding block diagonal.
bool is_optimal_update(const VectorMdsCode& code);

enum class Family { general, diagonal, access };

std::string to_string(Family family);
/// Throws InvalidParameters on unknown names.
Family parse_family(const std::string& name);

/// Exact log_r(l); throws NotPowerOfR when l is not a power of r.
int exact_log(std::uint64_t l, std::uint64_t r);

/// Upper bound on k for an optimal-bandwidth (k+r, k, l) MDS code:
///   general  l * C(l, l/r)
///   diagonal log_r l
///   access   r * log_r l
/// plus one for schemes that are not constant. Throws NotPowerOfR,
/// InvalidParameters (r < 2 or r not dividing l), std::overflow_error.
std::uint64_t bound_max_k(std::uint64_t l, std::uint64_t r, Family family,
                          bool constant_scheme);

/// Lower bound (r+1) log_r l of the known general construction; reported
/// alongside the general bound without claiming tightness.
std::uint64_t general_lower_bound(std::uint64_t l, std::uint64_t r);

/// dim(∩_{t in T} S_t) <= l / r^|T| for every T with 1 <= |T| <= max_size.
/// Expects a constant scheme; notes when it is not basis-aligned.
CheckReport intersection_profile(const Field& field, const RepairScheme& scheme,
                                 int max_size);

struct DegreeReport {
  std::vector<int> degrees;  // degrees[i] = |{m : e_i in S_m}|
  CheckReport report;
};

/// Bipartite basis-vector/subspace incidence: each degree <= log_r l and the
/// degrees sum to k * l / r (the sum is only checked for basis-aligned
/// schemes).
DegreeReport basis_vector_degrees(const Field& field, const RepairScheme& scheme);

/// A set partition of {0..l-1}; blocks are sorted, and ordered by their
/// smallest element.
class Partition {
public:
  Partition() = default;
  /// Throws InvalidParameters unless the blocks are disjoint, nonempty and
  /// cover {0..n-1} for some n.
  explicit Partition(std::vector<std::vector<int>> blocks);

  static Partition whole(int n);

  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  int size() const noexcept { return n_; }

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  std::vector<std::vector<int>> blocks_;
  int n_ = 0;
};

/// Common refinement: all nonempty pairwise intersections.
Partition meet(const Partition& a, const Partition& b);
/// Meet of a list; the empty list gives the one-block partition of {0..n-1}.
Partition meet(const std::vector<Partition>& parts, int n);

/// Groups the coordinates of a diagonal matrix by equal diagonal entries.
Partition eigen_partition(const Field& field, const Matrix& diagonal_block);

/// X(i,j) for every block, row-major (index i*k + j). Throws NotDiagonal.
std::vector<Partition> eigen_partitions(const VectorMdsCode& code);

struct CoordinateGroup {
  std::vector<int> coords;               // x in the meet X
  std::vector<std::vector<int>> blocks;  // P_x
  int piece_dim = 0;                     // dim(S_m ∩ span(e_x))
  double max_probability = 0;            // max |z| / |x|
  double entropy = 0;                    // base-r entropy of |z| / |x|
};

struct DiagonalStructure {
  Partition meet;
  std::vector<CoordinateGroup> groups;
  CheckReport report;
};

/// For node m of a diagonal code with constant scheme and identity last row:
/// S_m splits as the direct sum of S_m ∩ span(e_x) over the meet X of the
/// other nodes' eigen-partitions, every block z of P_x = x ∧ (∧_i X(i,m))
/// has |z| <= |x|/r, and the conditional block distribution has base-r
/// entropy at least 1. Throws NotDiagonal, NotNormalized, NotConstant.
DiagonalStructure diagonal_structure_check(const VectorMdsCode& code,
                                           const RepairScheme& scheme, int m);

struct DeterminantCriterion {
  std::vector<std::vector<int>> index_sets;  // I_m, 0-based columns
  Matrix values;                             // values(m, m') = f_m(S_{m'})
  CheckReport report;
};

/// For each m, the lexicographically smallest column set I of size l/r+1
/// making rows [l(r-1)/r, l] (1-based) of stack(S_m C(i,m)) invertible, and
/// f_m(S) = det(stack(S C(i,m)))[rows, I]. Passes iff f_m(S_{m'}) != 0
/// exactly when m' = m. Throws NotConstant, NoValidIndexSet.
DeterminantCriterion determinant_criterion(const VectorMdsCode& code,
                                           const RepairScheme& scheme);

} // namespace vmds
