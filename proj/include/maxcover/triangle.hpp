#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "maxcover/instance.hpp"
#include "maxcover/oracle.hpp"

namespace mkc {

// Complete tripartite graph whose nodes are subsets of X'.  Part p holds all
// subsets of size part_size[p], in lexicographic order.  Weights are taken
// against the universe subset Y' only.
struct SuperNodeGraph {
  int k = 0;
  std::array<int, 3> part_size{};
  std::array<std::vector<std::vector<Id>>, 3> parts;
  std::array<std::vector<std::int64_t>, 3> node_w;
  // Edge weights for part pairs (0,1), (0,2), (1,2), row-major.
  std::array<std::vector<std::int64_t>, 3> edge_w;

  std::int64_t edge(int p, int q, size_t i, size_t j) const;
  std::int64_t triangle_weight(size_t i, size_t j, size_t l) const;
};

// Part sizes ceil(k'/3), ceil((k'-1)/3), floor(k'/3).
std::array<int, 3> balanced_sizes(int k);

// y_mask[y] != 0 marks Y'; an empty mask means the whole universe.
// Throws ResourceError when nodes and edges exceed `budget` entries.
SuperNodeGraph build_tripartite(const CoverInstance& inst, const std::vector<Id>& xs, const std::vector<char>& y_mask,
                                int k, std::int64_t budget = kDefaultBudget);

struct TriangleResult {
  std::int64_t weight = 0;
  std::array<size_t, 3> index{};
  std::array<std::vector<Id>, 3> nodes;
  std::vector<Id> members() const;  // sorted union of the three nodes
};

// Maximum six-term weight; ties go to the lexicographically smallest
// (i, j, l).  The outer loop runs under OpenMP.
TriangleResult max_weight_triangle(const SuperNodeGraph& g, SolveStats* stats = nullptr);
TriangleResult max_weight_triangle_serial(const SuperNodeGraph& g, SolveStats* stats = nullptr);
// Reference: every triangle in index order, no pruning.
TriangleResult max_weight_triangle_exhaustive(const SuperNodeGraph& g);

}  // namespace mkc
