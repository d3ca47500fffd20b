#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <type_traits>
#include <limits>
#include <vector>

#include "maxcover/instance.hpp"

namespace mkc {

// Saturates at UINT64_MAX.
inline std::uint64_t binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - r + i) / static_cast<unsigned __int128>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

// Calls f(const std::vector<Id>&) for every r-subset of [0,n) in lexicographic order.
// Stops early if f returns false.
template <class F>
void for_each_subset_lex(int n, int r, F&& f) {
  if (r < 0 || r > n) return;
  std::vector<Id> s(r);
  for (int i = 0; i < r; ++i) s[i] = i;
  while (true) {
    if constexpr (std::is_same_v<decltype(f(s)), bool>) {
      if (!f(s)) return;
    } else {
      f(s);
    }
    int i = r - 1;
    while (i >= 0 && s[i] == n - r + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < r; ++j) s[j] = s[j - 1] + 1;
  }
}

inline std::vector<std::vector<Id>> subsets_lex(int n, int r) {
  std::vector<std::vector<Id>> out;
  for_each_subset_lex(n, r, [&](const std::vector<Id>& s) { out.push_back(s); });
  return out;
}

// Colexicographic: compare from the largest element down.
inline bool colex_less(const std::vector<Id>& a, const std::vector<Id>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline std::vector<std::vector<Id>> subsets_colex(int n, int r) {
  auto out = subsets_lex(n, r);
  std::sort(out.begin(), out.end(), colex_less);
  return out;
}

// Sorted union of two sorted id lists.
inline std::vector<Id> sorted_union(const std::vector<Id>& a, const std::vector<Id>& b) {
  std::vector<Id> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool sorted_disjoint(const std::vector<Id>& a, const std::vector<Id>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return true;
}

}  // namespace mkc
