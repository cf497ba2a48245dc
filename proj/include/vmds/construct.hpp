#pragma once

#include <cstdint>
#include <vector>

#include "vmds/code.hpp"

namespace vmds {

struct CodeAndScheme {
  VectorMdsCode code;
  RepairScheme scheme;
};

/// The (6,4,2) optimal-bandwidth code over GF(7) with its repair rules.
/// Parity 1 is a+b+c+d style (all identity blocks); parity 2 uses
/// C(2,1) = [[1,5],[0,3]], C(2,2) = [[1,0],[2,3]], C(2,3) = diag(2,4),
/// C(2,4) = 5I.
CodeAndScheme figure1_code();

/// Diagonal (t+r, t, r^t) code with k = t = log_r l.
///
/// C(i,j) is diagonal with entry lambda_j(i, digit_j(x)) at coordinate x,
/// where digit_j is the j-th base-r digit, every node j has its own r x r
/// eigenvalue table lambda_j and the last row of each table is all ones. The
/// constant scheme S_j is spanned by the indicator vectors of the blocks
/// {x : all digits but digit_j fixed}. Tables come from a lexicographic
/// backtracking sweep over nonzero field elements, so the output is
/// deterministic. Throws InvalidParameters (r < 2, t < 1, r^t > 256) and
/// ConstructionFailed (no tables within `budget` tried tables, or the
/// certification fails).
CodeAndScheme diagonal_code(int r, int t, const Field& field,
                            std::uint64_t budget = 1'000'000);

/// Deletes systematic node d (0-based) of an optimal-bandwidth MDS code and
/// rebuilds the rest with C'(j,m) = A(r,d) A(j,d)^-1 A(j,m) A(r,m)^-1 and the
/// constant scheme S_m = S(r,m). Pass d = -1 for the last node. Throws
/// NotOptimalBandwidth, NotMds, InvalidParameters (k < 2 or d out of range).
CodeAndScheme constant_scheme_transform(const VectorMdsCode& code,
                                        const RepairScheme& scheme, int d = -1);

/// Restricts the code and scheme to the kept systematic nodes (0-based, any
/// order; output follows ascending order). Throws EmptyKeepSet,
/// InvalidParameters for bad indices, NotMds / NotOptimalBandwidth when the
/// input was not valid to begin with.
CodeAndScheme shorten(const VectorMdsCode& code, const RepairScheme& scheme,
                      std::vector<int> keep);

/// Uniformly random invertible blocks, redrawn until the grid is MDS.
/// Deterministic per seed. Throws BudgetExhausted after `attempts` grids.
VectorMdsCode random_mds_code(int k, int r, int l, const Field& field, std::uint64_t seed,
                              int attempts = 1000);

} // namespace vmds
