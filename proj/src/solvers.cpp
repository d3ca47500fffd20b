#include "maxcover/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hypercut.hpp"
#include "maxcover/triangle.hpp"

namespace mkc {

namespace {

std::vector<Id> map_ids(const std::vector<Id>& ids, const std::vector<Id>& origin) {
  std::vector<Id> out;
  out.reserve(ids.size());
  for (Id x : ids) out.push_back(origin[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Id> all_ids(int n) {
  std::vector<Id> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Empty set first, then every bundle of size <= k.
std::vector<std::vector<Id>> bundle_list(const CoverInstance& inst, int k, SolveStats& stats) {
  std::vector<std::vector<Id>> out = {{}};
  for (int c = 0; 1 + 2 * c <= k; ++c) {
    auto level = enumerate_bundles(inst, c, &stats);
    if (level.empty()) break;
    for (auto& b : level) out.push_back(std::move(b.vertices));
  }
  return out;
}

// Calls f(D) for every union of two disjoint listed bundles with |D| <= k.
template <class F>
void for_each_bundle_pair(const std::vector<std::vector<Id>>& list, int k, F&& f) {
  for (size_t i = 0; i < list.size(); ++i) {
    for (size_t j = i; j < list.size(); ++j) {
      if (j == i && i != 0) continue;
      if (static_cast<int>(list[i].size() + list[j].size()) > k) continue;
      if (!sorted_disjoint(list[i], list[j])) continue;
      f(sorted_union(list[i], list[j]));
    }
  }
}

bool take(SolveResult& best, std::int64_t value, const std::vector<Id>& witness) {
  if (value > best.value || (value == best.value && witness < best.witness)) {
    best.value = value;
    best.witness = witness;
    return true;
  }
  return false;
}

double ipow(double b, double e) { return std::pow(std::max(b, 1.0), e); }

}  // namespace

CoverInstance residual_instance(const CoverInstance& inst, const std::vector<Id>& taken, std::vector<Id>* origin) {
  std::vector<char> removed(inst.u(), 0);
  std::vector<char> gone(inst.n(), 0);
  for (Id x : taken) {
    gone[x] = 1;
    for (Id y : inst.set(x)) removed[y] = 1;
  }
  std::vector<Id> keep;
  keep.reserve(inst.n());
  for (Id x = 0; x < inst.n(); ++x)
    if (!gone[x]) keep.push_back(x);
  CoverInstance out = restrict_instance(inst, keep, &removed);
  if (origin) *origin = std::move(keep);
  return out;
}

RegularitySplit regularity_split(const CoverInstance& inst, int k) {
  RegularitySplit s;
  const std::int64_t ds = inst.max_set_size();
  for (Id x = 0; x < inst.n(); ++x) {
    const std::int64_t d = inst.degree(x);
    if (d * k >= ds) s.H1.push_back(x);
    if (d * 2 * k >= ds) s.H2.push_back(x);
  }
  s.guess_h1 = static_cast<std::int64_t>(s.H1.size()) < 2LL * k * k * inst.max_frequency();
  return s;
}

SolveResult partial_ds_core(const CoverInstance& inst, int k, const SolverOptions& opt) {
  SolveResult best;
  best.stats.regime = "core";
  k = std::min(std::max(k, 0), inst.n());
  if (k == 0) return best;
  best.value = -1;
  const std::vector<std::vector<Id>> list = bundle_list(inst, k, best.stats);
  const std::vector<Id> xs = all_ids(inst.n());
  CoverageScratch scratch(inst.u());
  std::vector<char> mask(inst.u());
  for_each_bundle_pair(list, k, [&](const std::vector<Id>& D) {
    const int kp = k - static_cast<int>(D.size());
    std::vector<Id> witness = D;
    if (kp > 0) {
      std::fill(mask.begin(), mask.end(), 1);
      for (Id x : D)
        for (Id y : inst.set(x)) mask[y] = 0;
      const SuperNodeGraph g = build_tripartite(inst, xs, mask, kp, opt.budget);
      const TriangleResult tri = max_weight_triangle(g, &best.stats);
      witness = sorted_union(D, tri.members());
    }
    ++best.stats.unions;
    take(best, coverage_value(inst, witness, scratch), witness);
  });
  return best;
}

SolveResult solve_large_universe(const CoverInstance& inst, int k, const SolverOptions& opt) {
  std::vector<Id> origin;
  const CoverInstance pruned = prune_candidates(inst, std::max(k, 1), &origin);
  SolveResult r = partial_ds_core(pruned, k, opt);
  r.witness = map_ids(r.witness, origin);
  r.stats.regime = "i";
  return r;
}

SolveResult regularize_and_solve(const CoverInstance& inst, int k, const SolverOptions& opt) {
  SolveResult best;
  best.stats.regime = "regularize";
  k = std::min(std::max(k, 0), inst.n());
  if (k == 0 || inst.max_set_size() == 0) return best;
  const RegularitySplit split = regularity_split(inst, k);
  if (split.guess_h1) {
    best.value = -1;
    for (Id x : split.H1) {
      std::vector<Id> origin;
      const CoverInstance rest = residual_instance(inst, {x}, &origin);
      SolveResult sub = regularize_and_solve(rest, k - 1, opt);
      std::vector<Id> witness = map_ids(sub.witness, origin);
      witness.insert(std::upper_bound(witness.begin(), witness.end(), x), x);
      best.stats.absorb(sub.stats);
      best.stats.depth = std::max(best.stats.depth, sub.stats.depth + 1);
      take(best, inst.degree(x) + sub.value, witness);
    }
    return best;
  }
  // Every optimal candidate lies in H2; elements outside N(H2) drop out.
  const CoverInstance h2 = restrict_instance(inst, split.H2);
  std::vector<Id> origin;
  const CoverInstance pruned = prune_candidates(h2, k, &origin);
  const SuperNodeGraph g = build_tripartite(pruned, all_ids(pruned.n()), {}, k, opt.budget);
  const TriangleResult tri = max_weight_triangle(g, &best.stats);
  std::vector<Id> witness;
  for (Id x : tri.members()) witness.push_back(split.H2[origin[x]]);
  std::sort(witness.begin(), witness.end());
  best.value = coverage_value(inst, witness);
  best.witness = std::move(witness);
  ++best.stats.unions;
  return best;
}

SolveResult solve_intermediate(const CoverInstance& inst, int k, const SolverOptions& opt) {
  SolveResult best;
  k = std::min(std::max(k, 0), inst.n());
  best.stats.regime = "ii";
  if (k == 0) return best;
  best.value = -1;
  std::vector<Id> origin;
  const CoverInstance pruned = prune_candidates(inst, k, &origin);
  const std::vector<std::vector<Id>> list = bundle_list(pruned, k, best.stats);
  CoverageScratch scratch(pruned.u());
  for_each_bundle_pair(list, k, [&](const std::vector<Id>& D) {
    const std::int64_t base = coverage_value(pruned, D, scratch);
    const int kp = k - static_cast<int>(D.size());
    std::vector<Id> witness = D;
    std::int64_t value = base;
    if (kp > 0) {
      std::vector<Id> o2;
      const CoverInstance rest = residual_instance(pruned, D, &o2);
      SolveResult sub = regularize_and_solve(rest, kp, opt);
      best.stats.absorb(sub.stats);
      witness = sorted_union(D, map_ids(sub.witness, o2));
      value += sub.value;
    }
    ++best.stats.unions;
    take(best, value, witness);
  });
  best.witness = map_ids(best.witness, origin);
  return best;
}

SolveResult solve_small_universe(const CoverInstance& inst, int k, const SolverOptions& opt) {
  k = std::min(std::max(k, 0), inst.n());
  std::vector<Id> origin;
  const CoverInstance pruned = prune_candidates(inst, std::max(k, 1), &origin);
  SolveResult best = regularize_and_solve(pruned, k, opt);
  if (k >= 3) {
    for (const Hyperedge& he : list_hyperedges(pruned)) {
      const std::vector<Id> triple(he.v.begin(), he.v.end());
      std::vector<Id> o2;
      const CoverInstance rest = residual_instance(pruned, triple, &o2);
      SolveResult sub = solve_small_universe(rest, k - 3, opt);
      best.stats.absorb(sub.stats);
      best.stats.depth = std::max(best.stats.depth, sub.stats.depth + 1);
      ++best.stats.unions;
      take(best, coverage_value(pruned, triple) + sub.value, sorted_union(triple, map_ids(sub.witness, o2)));
    }
  }
  best.witness = map_ids(best.witness, origin);
  best.stats.regime = "iii";
  return best;
}

std::string cover_regime(const CoverInstance& inst) {
  const long double ds = inst.max_set_size();
  const long double u = inst.u();
  if (ds * ds <= u) return "i";
  if (ds * ds * ds <= u * u) return "ii";
  return "iii";
}

double cover_work_estimate(const CoverInstance& inst, int k, const std::string& regime, double omega) {
  const double n = inst.n(), u = inst.u();
  const double ds = inst.max_set_size(), df = inst.max_frequency();
  const double tri = k * omega / 3.0;
  if (regime == "i") return ipow(std::min(n, df * std::sqrt(ds)), k) + ipow(std::min(n, ds * df), tri);
  if (regime == "ii") return ipow(std::min(n, df * std::sqrt(ds)), k) + ipow(std::min(n, df * std::sqrt(u)), tri);
  if (regime == "iii") return ipow(std::min(n, df * std::cbrt(u)), k) + ipow(std::min(n, df * std::sqrt(u)), tri);
  throw InputError("unknown regime: " + regime);
}

SolveResult max_k_cover(const CoverInstance& inst, int k, const SolverOptions& opt) {
  k = std::min(std::max(k, 0), inst.n());
  SolveResult r;
  if (k == 0) {
    r.stats.regime = "trivial";
    return r;
  }
  const std::string regime = opt.force_regime ? *opt.force_regime : cover_regime(inst);
  if (!opt.force_regime) {
    const double est = cover_work_estimate(inst, k, regime, opt.omega);
    // The small-universe recursion is only known to be exact up to k = 5.
    if (est > ipow(inst.n(), k) || (regime == "iii" && k > 5)) {
      r = brute_force(inst, k);
      r.stats.regime = "oracle-fallback-" + regime;
      return r;
    }
  }
  if (regime == "i") return solve_large_universe(inst, k, opt);
  if (regime == "ii") return solve_intermediate(inst, k, opt);
  if (regime == "iii") return solve_small_universe(inst, k, opt);
  throw InputError("unknown regime: " + regime);
}

SolveResult partial_k_dominating_set(const PdsGraph& g, int k, const SolverOptions& opt) {
  k = std::min(std::max(k, 0), g.n());
  SolveResult r;
  if (k == 0) {
    r.stats.regime = "trivial";
    return r;
  }
  const double n = g.n(), d = g.max_degree() + 1.0;
  const double est = ipow(std::min(n, d * std::sqrt(d)), k) + ipow(std::min(n, d * d), k * opt.omega / 3.0);
  if (est > ipow(n, k)) {
    r = brute_force_pds(g, k);
    r.stats.regime = "oracle-fallback";
    return r;
  }
  std::vector<Id> origin;
  const CoverInstance pruned = prune_candidates(pds_to_cover(g), k, &origin);
  r = partial_ds_core(pruned, k, opt);
  r.witness = map_ids(r.witness, origin);
  r.stats.regime = "bundle-triangle";
  return r;
}

}  // namespace mkc
