#pragma once

#include <cstdint>
#include <vector>

#include "maxcover/instance.hpp"

namespace mkc {

// Default cap on materialized matrix entries for the product-based solvers.
inline constexpr std::int64_t kDefaultBudget = std::int64_t{1} << 26;

struct CountMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int32_t> data;

  CountMatrix() = default;
  CountMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {}
  std::int32_t& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  std::int32_t at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  friend bool operator==(const CountMatrix&, const CountMatrix&) = default;
};

// Exact integer product; row blocks run under OpenMP.
CountMatrix matrix_multiply(const CountMatrix& A, const CountMatrix& B);
// Single-threaded schoolbook reference.
CountMatrix matrix_multiply_serial(const CountMatrix& A, const CountMatrix& B);

// Exhaustive search over all min(k,n)-subsets; witness is the lexicographically
// smallest optimum.  The first-element loop runs under OpenMP.
SolveResult brute_force(const CoverInstance& inst, int k);
SolveResult brute_force_serial(const CoverInstance& inst, int k);

// max over k-subsets of vertices of |N[v1] u ... u N[vk]|, computed directly on g.
SolveResult brute_force_pds(const PdsGraph& g, int k);

// Rows: ceil(k/2)-subsets, columns: floor(k/2)-subsets, both colexicographic.
// A[S][y] = 1 iff no set of S contains y; B is the same for column subsets,
// transposed; C = A*B counts elements missed by S u T.
struct BaselineMatrices {
  std::vector<std::vector<Id>> row_sets;
  std::vector<std::vector<Id>> col_sets;
  CountMatrix A;
  CountMatrix B;
  CountMatrix C;
};
BaselineMatrices build_baseline_matrices(const CoverInstance& inst, int k, std::int64_t budget = kDefaultBudget);

// u - min C[S][T]; throws ResourceError when the matrices exceed `budget` entries.
SolveResult mm_baseline(const CoverInstance& inst, int k, std::int64_t budget = kDefaultBudget);

// Exhaustive search with an admissible degree-sum bound.  Exact value; also
// returns every optimal set (up to max_optima of them).  Meant for instances
// with a few very heavy sets among many light ones.
struct BoundedSearchResult {
  std::int64_t value = 0;
  std::vector<std::vector<Id>> optima;
  bool truncated = false;
  std::uint64_t nodes = 0;
};
BoundedSearchResult exhaustive_bounded(const CoverInstance& inst, int k, size_t max_optima = 1024);

}  // namespace mkc
