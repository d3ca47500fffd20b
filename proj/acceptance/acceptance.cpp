// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hardness.hpp"
#include "maxcover/hypercut.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"
#include "maxcover/solvers.hpp"
#include "maxcover/sparse_pds.hpp"
#include "maxcover/triangle.hpp"

using namespace mkc;

namespace {

// Pinned tolerances.
constexpr double kSlopeTarget = 4.0;
constexpr double kSlopeTolerance = 0.5;
constexpr double kBundleEnvelopeFactor = 8.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

int pick(Rng& rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

std::vector<Id> iota_ids(int n) {
  std::vector<Id> v(n);
  std::iota(v.begin(), v.end(), Id{0});
  return v;
}

// --- 1 -------------------------------------------------------------------

void cover_equivalence(Outcome& o) {
  Rng rng(1001);
  int checks = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = pick(rng, 2, 12), u = pick(rng, 1, 12), k = 2 + t % 3;
    const auto inst = random_cover(rng, n, u, 0.1 + 0.1 * pick(rng, 0, 5));
    const auto want = brute_force(inst, k).value;
    const std::vector<std::pair<const char*, std::function<SolveResult()>>> algos = {
        {"max_k_cover", [&] { return max_k_cover(inst, k); }},
        {"solve_large_universe", [&] { return solve_large_universe(inst, k); }},
        {"solve_intermediate", [&] { return solve_intermediate(inst, k); }},
        {"solve_small_universe", [&] { return solve_small_universe(inst, k); }},
        {"mm_baseline", [&] { return mm_baseline(inst, k); }},
    };
    for (const auto& [name, run] : algos) {
      ++checks;
      const auto got = run().value;
      if (got != want)
        o.fail(std::string(name) + " trial " + std::to_string(t) + ": " + std::to_string(got) + " vs " +
               std::to_string(want));
    }
  }
  o.detail << "500 instances, " << checks << " solver runs";
}

// --- 2 -------------------------------------------------------------------

void pds_equivalence(Outcome& o) {
  Rng rng(1002);
  for (int t = 0; t < 500; ++t) {
    const int n = pick(rng, 2, 12), k = 2 + t % 3;
    const auto g = random_graph(rng, n, 0.1 + 0.1 * pick(rng, 0, 5));
    const auto want = brute_force_pds(g, k).value;
    const auto a = partial_k_dominating_set(g, k).value;
    const auto b = pds_sparse(g, k).value;
    if (a != want) o.fail("partial_k_dominating_set trial " + std::to_string(t));
    if (b != want) o.fail("pds_sparse trial " + std::to_string(t));
  }
  for (int t = 0; t < 300; ++t) {
    const int n = pick(rng, 2, 100);
    const auto g = random_bounded_degree_graph(rng, n, pick(rng, 1, std::max(1, n / 4)));
    const auto want = brute_force_pds(g, 2).value;
    if (pds2_table(g).value != want) o.fail("pds2_table trial " + std::to_string(t));
    if (pds2_sparse(g).value != want) o.fail("pds2_sparse trial " + std::to_string(t));
  }
  o.detail << "500 small graphs (k in 2..4), 300 k=2 graphs with n <= 100";
}

// --- 3 -------------------------------------------------------------------

std::int64_t restricted_union(const CoverInstance& inst, const std::vector<Id>& xs, const std::vector<char>& mask) {
  std::vector<char> seen(inst.u(), 0);
  std::int64_t c = 0;
  for (Id x : xs)
    for (Id y : inst.set(x))
      if (mask[y] && !seen[y]) {
        seen[y] = 1;
        ++c;
      }
  return c;
}

void triangle_laws(Outcome& o) {
  Rng rng(1003);
  int sampled = 0, hypercut = 0, equal = 0;
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_cover(rng, pick(rng, 6, 10), pick(rng, 4, 12), 0.2 + 0.05 * (t % 4));
    std::vector<char> mask(inst.u());
    for (auto& m : mask) m = pick(rng, 0, 3) != 0;
    std::vector<char> removed(inst.u());
    for (int y = 0; y < inst.u(); ++y) removed[y] = !mask[y];
    const auto restricted = restrict_instance(inst, iota_ids(inst.n()), &removed);
    const auto g = build_tripartite(inst, iota_ids(inst.n()), mask, 3 + t % 4);
    for (int s = 0; s < 20; ++s) {
      const size_t i = rng() % g.parts[0].size(), j = rng() % g.parts[1].size(), l = rng() % g.parts[2].size();
      const auto& a = g.parts[0][i];
      const auto& b = g.parts[1][j];
      const auto& c = g.parts[2][l];
      const auto all = sorted_union(sorted_union(a, b), c);
      const auto w = g.triangle_weight(i, j, l);
      const auto un = restricted_union(inst, all, mask);
      ++sampled;
      if (w > un) o.fail("weight above union at instance " + std::to_string(t));
      const bool disjoint = all.size() == a.size() + b.size() + c.size();
      if (disjoint && is_arity_reducing_hypercut(restricted, a, b, c)) {
        ++hypercut;
        if (w == un) ++equal;
        else o.fail("hypercut triangle below union at instance " + std::to_string(t));
      }
    }
  }
  o.detail << sampled << " triangles, " << equal << "/" << hypercut << " hypercut triangles at equality";
}

// --- 4 -------------------------------------------------------------------

bool common_element(const CoverInstance& inst, Id a, Id b, Id c) {
  const auto sb = inst.set(b), sc = inst.set(c);
  for (Id y : inst.set(a))
    if (std::binary_search(sb.begin(), sb.end(), y) && std::binary_search(sc.begin(), sc.end(), y)) return true;
  return false;
}

// A set is a bundle iff it is a singleton or some pair hangs off a smaller bundle by a hyperedge.
bool is_bundle_def(const CoverInstance& inst, const std::vector<Id>& s) {
  if (s.size() == 1) return true;
  if (s.size() < 3 || s.size() % 2 == 0) return false;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      std::vector<Id> rest;
      for (size_t t = 0; t < s.size(); ++t)
        if (t != i && t != j) rest.push_back(s[t]);
      for (Id b : rest)
        if (common_element(inst, b, s[i], s[j]) && is_bundle_def(inst, rest)) return true;
    }
  return false;
}

void bundle_laws(Outcome& o) {
  Rng rng(1004);
  int bundles = 0, overlapping = 0, maximal_pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_cover(rng, pick(rng, 3, 10), pick(rng, 2, 10), 0.2 + 0.05 * (t % 5));
    for (int c = 0; c <= 2; ++c) {
      const auto got = enumerate_bundles(inst, c);
      std::vector<std::vector<Id>> want;
      for_each_subset_lex(inst.n(), 1 + 2 * c, [&](const std::vector<Id>& s) {
        if (is_bundle_def(inst, s)) want.push_back(s);
      });
      bundles += static_cast<int>(got.size());
      if (got.size() != want.size()) {
        o.fail("bundle count differs at instance " + std::to_string(t));
        continue;
      }
      for (size_t i = 0; i < got.size(); ++i) {
        if (got[i].vertices.size() != static_cast<size_t>(1 + 2 * c)) o.fail("bundle of wrong size");
        if (got[i].vertices != want[i]) o.fail("bundle set differs at instance " + std::to_string(t));
      }
    }
    const auto mb = maximal_bundles(inst);
    bool clash = false;
    for (size_t a = 0; a < mb.size(); ++a)
      for (size_t b = a + 1; b < mb.size(); ++b) {
        ++maximal_pairs;
        std::vector<Id> common;
        std::set_intersection(mb[a].begin(), mb[a].end(), mb[b].begin(), mb[b].end(), std::back_inserter(common));
        clash |= !common.empty();
      }
    if (clash) ++overlapping;
  }
  if (overlapping > 0) o.fail("distinct maximal bundles intersect");
  o.detail << bundles << " bundles checked against the definition; " << overlapping
           << "/100 instances have intersecting maximal bundles (" << maximal_pairs << " pairs)";
}

// --- 5 -------------------------------------------------------------------

std::int64_t restricted_opt(const CoverInstance& inst, int k, const std::vector<Id>& allowed,
                            const std::vector<Id>& must) {
  std::int64_t best = -1;
  const int kk = std::min<int>(k, static_cast<int>(allowed.size()));
  for_each_subset_lex(static_cast<int>(allowed.size()), kk, [&](const std::vector<Id>& pos) {
    std::vector<Id> s;
    for (Id p : pos) s.push_back(allowed[p]);
    if (!must.empty()) {
      bool hit = false;
      for (Id x : s) hit |= std::binary_search(must.begin(), must.end(), x);
      if (!hit) return;
    }
    best = std::max(best, coverage_value(inst, s));
  });
  return best;
}

void regularization(Outcome& o) {
  Rng rng(1005);
  int dense = 0;
  for (int t = 0; t < 200; ++t) {
    // Alternate sparse instances with ones dominated by many equal heavy sets.
    CoverInstance inst;
    if (t % 2 == 0) {
      inst = random_cover(rng, pick(rng, 2, 12), pick(rng, 1, 12), 0.1 + 0.1 * (t % 6));
    } else {
      const int u = pick(rng, 20, 40), n = pick(rng, 8, 12);
      std::vector<std::vector<Id>> sets(n);
      for (auto& s : sets) {
        for (Id y = 0; y < u; ++y)
          if (pick(rng, 0, 9) == 0) s.push_back(y);
      }
      inst = CoverInstance::from_sets(u, sets);
    }
    const int k = 1 + t % 3;
    const auto split = regularity_split(inst, k);
    const auto all = iota_ids(inst.n());
    const auto opt = brute_force(inst, k).value;
    if (restricted_opt(inst, k, all, split.H1) != opt) o.fail("(a) at instance " + std::to_string(t));
    if (!split.guess_h1) {
      ++dense;
      if (restricted_opt(inst, k, split.H2, {}) != opt) o.fail("(b) at instance " + std::to_string(t));
    }
  }
  o.detail << "200 instances, " << dense << " with |H1| >= 2k^2 df";
}

// --- 6 -------------------------------------------------------------------

void two_bundle(Outcome& o) {
  Rng rng(1006);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_cover(rng, pick(rng, 9, 12), pick(rng, 3, 10), 0.2 + 0.05 * (t % 6));
    auto ids = iota_ids(inst.n());
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(1 + t % 9);
    std::sort(ids.begin(), ids.end());
    try {
      const auto d = check_two_bundle_decomposition(inst, ids);
      if (!is_arity_reducing_hypercut(inst, d.parts[0], d.parts[1], d.parts[2]))
        o.fail("parts cross a hyperedge at pair " + std::to_string(t));
      const int kp = static_cast<int>(ids.size() - d.D1.vertices.size() - d.D2.vertices.size());
      const auto sizes = balanced_sizes(kp);
      for (int p = 0; p < 3; ++p)
        if (static_cast<int>(d.parts[p].size()) != sizes[p]) o.fail("unbalanced parts at pair " + std::to_string(t));
      for (const auto* b : {&d.D1, &d.D2})
        if (!b->vertices.empty() && !bundle_is_valid(inst, *b)) o.fail("invalid bundle at pair " + std::to_string(t));
      std::vector<Id> back = sorted_union(sorted_union(d.D1.vertices, d.D2.vertices),
                                          sorted_union(sorted_union(d.parts[0], d.parts[1]), d.parts[2]));
      if (back != ids) o.fail("pieces do not reassemble S at pair " + std::to_string(t));
    } catch (const InvariantError& e) {
      o.fail(std::string("construction failed: ") + e.what());
    }
  }
  o.detail << "300 (instance, S) pairs, |S| <= 9";
}

// --- 7 -------------------------------------------------------------------

void reductions(Outcome& o) {
  Rng rng(1007);
  int orth = 0, checked = 0;
  for (const auto& [k, h] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
    for (int t = 0; t < 100; ++t) {
      const int size = pick(rng, 1, 5), d = pick(rng, 1, 5);
      const auto raw = random_khov(rng, k, h, size, d, 0.3 + 0.1 * pick(rng, 0, 4));
      const auto inst = regularize_full(raw);
      const std::string tag = "(" + std::to_string(k) + "," + std::to_string(h) + ") trial " + std::to_string(t);
      for (int r = 1; r < h; ++r)
        if (!is_r_regular(inst, r)) o.fail("not " + std::to_string(r) + "-regular " + tag);
      if (!products_preserved(raw, inst, h, h)) o.fail("h-products changed " + tag);
      const auto cover = reduce_to_cover(inst);
      const auto pds = reduce_to_pds(inst);
      if (!verify_reduction(inst, cover).ok()) o.fail("cover certificate " + tag);
      if (!verify_reduction(inst, pds).ok()) o.fail("pds certificate " + tag);
      if (k == 2 && h == 2) {
        if (!check_two_family_identity(inst, cover)) o.fail("two-family identity " + tag);
        orth += khov_opt_min(inst).value == 0;
      }
      ++checked;
    }
  }
  o.detail << checked << " instances, " << orth << " orthogonal (2,2) instances";
}

// --- 8 -------------------------------------------------------------------

void hyperclique(Outcome& o) {
  Rng rng(1008);
  int yes = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = random_partite_hypergraph(rng, 3, pick(rng, 1, 4), 3, 0.05 + 0.05 * (t % 5));
    const auto inst = hyperclique_to_khov(g, 1);
    const bool clique = has_hyperclique(g);
    yes += clique;
    if (clique != (khov_opt_min(inst).value == 0)) o.fail("trial " + std::to_string(t));
  }
  o.detail << "100 hypergraphs, " << yes << " with a hyperclique";
}

// --- 9 -------------------------------------------------------------------

void counter_scaling(Outcome& o) {
  Rng rng(1009);
  std::vector<double> xs, ys;
  for (int delta : {8, 16, 32}) {
    const auto g = random_bounded_degree_graph(rng, 2000, delta);
    const auto r = pds2_table(g);
    const double read = static_cast<double>(g.n()) + 2.0 * static_cast<double>(g.m());
    xs.push_back(std::log(static_cast<double>(g.max_degree())));
    ys.push_back(std::log(static_cast<double>(r.stats.ops) - read));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  if (std::abs(slope - kSlopeTarget) > kSlopeTolerance) o.fail("pds2_table slope " + std::to_string(slope));

  double worst = 0;
  for (int t = 0; t < 20; ++t) {
    const auto inst = random_cover(rng, pick(rng, 20, 60), pick(rng, 20, 60), 0.03 + 0.01 * (t % 5));
    for (int c = 0; c <= 2; ++c) {
      SolveStats st;
      enumerate_bundles(inst, c, &st);
      const double env = inst.n() * std::pow(std::max(inst.max_set_size(), 1), c) *
                         std::pow(std::max(inst.max_frequency(), 1), 2 * c);
      const double ratio = static_cast<double>(st.ops) / env;
      worst = std::max(worst, ratio);
      if (ratio > kBundleEnvelopeFactor) o.fail("bundle counter above envelope at c=" + std::to_string(c));
    }
  }
  o.detail << "pds2_table slope " << slope << " (target " << kSlopeTarget << " +- " << kSlopeTolerance
           << "); worst bundle counter/envelope " << worst;
}

// --- 10 ------------------------------------------------------------------

int exit_code(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
}

void cli_gate(Outcome& o) {
  const int good = exit_code(std::string("\"") + MAXCOVER_CLI + "\" verify --algo auto");
  const int bad = exit_code(std::string("\"") + MAXCOVER_MUTANT_CLI + "\" verify --algo auto");
  if (good != 0) o.fail("verify exited " + std::to_string(good));
  if (bad != 1) o.fail("mutant verify exited " + std::to_string(bad));
  o.detail << "verify exit " << good << ", mutant exit " << bad;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria = {
      {"oracle equivalence, cover", cover_equivalence},
      {"oracle equivalence, pds", pds_equivalence},
      {"triangle-weight laws", triangle_laws},
      {"bundle laws", bundle_laws},
      {"regularization, value form", regularization},
      {"two-bundle decomposition", two_bundle},
      {"reduction equivalence", reductions},
      {"hyperclique generator", hyperclique},
      {"counter scaling", counter_scaling},
      {"cli verify gate", cli_gate},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %zu %s: %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
