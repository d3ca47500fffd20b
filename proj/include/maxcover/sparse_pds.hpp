#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxcover/instance.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/solvers.hpp"

namespace mkc {

// Exact Partial 2-DS from a dense table over the 2(Δ+1)^2 highest-degree
// vertices.  stats.ops = input read (n + 2m) + table cells + decrements.
SolveResult pds2_table(const PdsGraph& g);

// Best pair among vertices of degree >= d, via N[i] n N[j] counts from a
// heavy/light split of the adjacency product.  Value 0 and no witness when
// fewer than two such vertices exist.
SolveResult pds2_heavy(const PdsGraph& g, int d, SolveStats* stats = nullptr);

inline std::uint64_t pair_key(Id a, Id b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// State of one degree layer V_d = {d <= deg < 2d} around the apex x (max
// degree, smallest id), with S = N[x] and R = V \ S.
//   C_S[x,y] = #{s in S \ N[x] : s in N[y]}
//   C_R[x,y] = #{r in R : r in N[x] and r in N[y]}
// for x in H_d = {deg >= Δ - 2d}, y in V_d.
struct LayerContext {
  int d = 0;
  Id apex = 0;
  std::vector<Id> Vd;
  std::vector<Id> Hd;
  std::vector<char> in_S;
  std::vector<int> r_count;  // |N[v] n R|
  std::unordered_map<std::uint64_t, int> C_S;
  std::unordered_map<std::uint64_t, int> C_R;
  // "" when the tables were built; otherwise which early exit fired.
  std::string early_exit;
  std::uint64_t ops = 0;

  std::int64_t pair_value(const PdsGraph& g, Id x, Id y) const;
};

// Requires 4d <= Δ (InputError otherwise).
LayerContext build_layer_context(const PdsGraph& g, int d);

// Best pair with one vertex in V_d, or nullopt when no optimal pair can meet V_d.
std::optional<SolveResult> pds2_light_layer(const PdsGraph& g, int d, SolveStats* stats = nullptr);

SolveResult pds2_sparse(const PdsGraph& g, double omega = kDefaultOmega);

// Best k-set whose induced subgraph has an edge; nullopt when none exists.
std::optional<SolveResult> edge_solution_scan(const PdsGraph& g, int k, std::int64_t budget = kDefaultBudget);

// Never exceeds the optimum; exact when an independent optimum beats every
// edge-containing k-set.
SolveResult independent_partial_ds(const PdsGraph& g, int k, const SolverOptions& opt = {});

SolveResult pds_sparse(const PdsGraph& g, int k, const SolverOptions& opt = {});

// G with the listed vertices deleted; origin maps new ids to old ones.
PdsGraph delete_vertices(const PdsGraph& g, const std::vector<char>& gone, std::vector<Id>* origin);

}  // namespace mkc
