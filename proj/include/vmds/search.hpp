#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "vmds/analysis.hpp"
#include "vmds/construct.hpp"

namespace vmds {

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

/// Result of a max-k search over one field.
///
/// `exhausted` is true only when every candidate code in the canonical space
/// was considered; then `achieved_k` is the maximum over this field (and no
/// claim is made about other fields). Otherwise it is a lower bound.
struct Certificate {
  int l = 0;
  int r = 0;
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  Family family = Family::general;
  bool constant_scheme = true;
  int achieved_k = 0;
  bool exhausted = false;
  std::uint64_t bound = 0;
  std::uint64_t enumeration_count = 0;
  std::uint64_t candidates = 0;  // candidate columns that repair themselves
  double elapsed_ms = 0;
  CodeAndScheme witness{VectorMdsCode(Field(2), 0, 2, 2, {}), RepairScheme()};
};

/// Largest k with an MDS, optimal-bandwidth (k+r, k, l) code over `field`
/// in the family (and with a constant scheme when asked).
///
/// Codes are canonical with the last parity row all identity. A node is a
/// candidate column: its r-1 free blocks plus its repairing subspaces
/// (diagonal blocks for the diagonal family, coordinate spans for the access
/// family). Candidates are compatible when every pair condition holds; the
/// answer is a maximum clique, with higher-order MDS minors checked while it
/// grows. The witness is the lexicographically smallest maximum clique.
///
/// Runs exhaustively when l*r <= 16, q <= 11 and the work (candidates plus
/// pair checks plus clique steps) fits in `budget`; otherwise a seeded random
/// sample is searched and `exhausted` is false. Worker threads are capped by
/// VMDS_THREADS (0 or unset means hardware concurrency). Throws
/// InvalidParameters for bad (l, r), NotPowerOfR where the family bound needs
/// it, and std::logic_error if achieved_k ever exceeds the proven bound.
Certificate certify_max_k(int l, int r, const Field& field, Family family,
                          bool constant_scheme, std::uint64_t budget = kDefaultBudget);

/// One more systematic node for a valid code, preserving MDS, optimal
/// bandwidth, the family predicate and scheme constancy. Existing blocks are
/// kept; the new node's last-row block is the identity. Returns nullopt when
/// the candidate space (over this field) holds no extension or the budget
/// runs out first.
std::optional<CodeAndScheme> extend_code(const VectorMdsCode& code,
                                         const RepairScheme& scheme, Family family,
                                         bool constant_scheme,
                                         std::uint64_t budget = kDefaultBudget);

/// `certificate v1` header block, `end`, then the witness document.
std::string render(const Certificate& certificate);

/// Inverse of render (elapsed time included). Throws ParseError.
Certificate parse_certificate(std::string_view text);

/// Worker count from VMDS_THREADS.
unsigned search_threads();

} // namespace vmds
