#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace vmds {

/// Calls fn(subset) for every t-subset of {0..n-1} in lexicographic order.
/// Stops early when fn returns false. Returns false iff stopped early.
template <class Fn>
bool for_each_combination(int n, int t, Fn&& fn) {
  if (t < 0 || t > n) return true;
  std::vector<int> idx(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<int>&>(idx))) return false;
    int i = t - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - t + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::vector<std::vector<int>> combinations(int n, int t) {
  std::vector<std::vector<int>> out;
  for_each_combination(n, t, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

/// n choose t, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t t) {
  if (t > n) return 0;
  t = t < n - t ? t : n - t;
  __extension__ using Wide = unsigned __int128;
  Wide out = 1;
  for (std::uint64_t i = 1; i <= t; ++i) {
    out = out * (n - t + i) / i;
    if (out > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(out);
}

} // namespace vmds
