#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmds/code.hpp"

namespace vmds {

/// Exact non-negative rational.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
  bool is_integer() const noexcept { return den == 1; }
  std::string to_string() const;
};

/// What one surviving node sends to the repair center: projection · stored.
struct NodeTransmission {
  int node = 0;
  Matrix projection;
  Vector symbols;
  int transmitted = 0;  // rank of the projection
  int accessed = 0;     // nonzero columns of the projection
};

struct RepairTranscript {
  int erased = 0;
  std::vector<NodeTransmission> transmissions;  // systematic nodes, then parities
  int total_bandwidth = 0;
  int total_access = 0;
  Vector reconstructed;
};

/// Projection matrix applied by each surviving node when systematic node m
/// is repaired. Parity k+i uses the basis of S(i,m); systematic m' uses the
/// RREF basis of rowspace(S(1,m)C(1,m'); ...; S(r,m)C(r,m')).
struct RepairPlan {
  int erased = 0;
  std::vector<int> nodes;
  std::vector<Matrix> projections;
};

/// Throws InvalidScheme when the parity projections of node m's own
/// contributions do not have full rank l, ErasedOutOfRange for m outside
/// [0, k).
RepairPlan plan_repair(const VectorMdsCode& code, const RepairScheme& scheme, int m);

/// Repairs systematic node m from the other n-1 nodes.
///
/// With `validate` set, the scheme must also pass the optimal-bandwidth
/// conditions for m (InvalidScheme otherwise). With it cleared, any scheme
/// whose node-m stack is invertible works, at whatever bandwidth its
/// interference spaces cost.
RepairTranscript repair_node(const VectorMdsCode& code, const RepairScheme& scheme,
                             const DataState& data, int m, bool validate = true);

/// l (n-1) / (n-k), the minimum repair bandwidth of an (n, k, l) MDS code.
Rational bandwidth_floor(std::uint64_t n, std::uint64_t k, std::uint64_t l);

/// Symbols read per surviving node (indexed like RepairPlan::nodes).
std::vector<int> access_profile(const VectorMdsCode& code, const RepairScheme& scheme,
                                int m);

/// `node <id> tx=<count> access=<count>` per node, totals, reconstruction.
std::string render(const RepairTranscript& transcript);

} // namespace vmds
