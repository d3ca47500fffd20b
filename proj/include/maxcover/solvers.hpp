#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxcover/instance.hpp"
#include "maxcover/oracle.hpp"

namespace mkc {

inline constexpr double kDefaultOmega = 2.3716;

struct SolverOptions {
  double omega = kDefaultOmega;
  std::int64_t budget = kDefaultBudget;
  // When set, max_k_cover runs this regime ("i", "ii", "iii") with no fallback.
  std::optional<std::string> force_regime;
};

struct RegularitySplit {
  std::vector<Id> H1;  // deg * k >= Δs
  std::vector<Id> H2;  // deg * 2k >= Δs
  bool guess_h1 = false;  // |H1| < 2 k^2 Δf
};
RegularitySplit regularity_split(const CoverInstance& inst, int k);

// Bundle-pair guessing around a max-weight triangle.  Expects a pruned instance.
SolveResult partial_ds_core(const CoverInstance& inst, int k, const SolverOptions& opt = {});

// Degree pruning followed by partial_ds_core.
SolveResult solve_large_universe(const CoverInstance& inst, int k, const SolverOptions& opt = {});

// Never exceeds the optimum; exact when a pruned optimum admits a balanced
// arity-reducing hypercut.
SolveResult regularize_and_solve(const CoverInstance& inst, int k, const SolverOptions& opt = {});

SolveResult solve_intermediate(const CoverInstance& inst, int k, const SolverOptions& opt = {});
// Exact for k <= 5.
SolveResult solve_small_universe(const CoverInstance& inst, int k, const SolverOptions& opt = {});

// "i" when Δs^2 <= u, "ii" when Δs^3 <= u^2, "iii" otherwise.
std::string cover_regime(const CoverInstance& inst);

// Predicted work of the structured solver for a regime (polynomial factors dropped).
double cover_work_estimate(const CoverInstance& inst, int k, const std::string& regime, double omega);

// Dispatches by regime, falling back to exhaustive search when the estimate
// exceeds n^k or when regime iii meets k > 5.  stats.regime records the path taken.
SolveResult max_k_cover(const CoverInstance& inst, int k, const SolverOptions& opt = {});

SolveResult partial_k_dominating_set(const PdsGraph& g, int k, const SolverOptions& opt = {});

// Removes the listed sets and every element they cover.  origin maps new ids
// to ids in `inst`.
CoverInstance residual_instance(const CoverInstance& inst, const std::vector<Id>& taken, std::vector<Id>* origin);

}  // namespace mkc
