#include <algorithm>

#include "doctest.h"
#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"
#include "maxcover/sparse_pds.hpp"

using namespace mkc;

namespace {

std::int64_t pair_value(const PdsGraph& g, Id a, Id b) { return closed_coverage(g, std::vector<Id>{a, b}); }

// Best pair over pairs accepted by `ok`, or -1.
template <class F>
std::int64_t restricted_pair_opt(const PdsGraph& g, F&& ok) {
  std::int64_t best = -1;
  for (Id a = 0; a < g.n(); ++a)
    for (Id b = a + 1; b < g.n(); ++b)
      if (ok(a, b)) best = std::max(best, pair_value(g, a, b));
  return best;
}

PdsGraph sparse_graph(Rng& rng, int t) {
  const int n = 2 + static_cast<int>(rng() % 99);
  const int m_target = static_cast<int>(rng() % 300);
  std::vector<std::pair<Id, Id>> e;
  for (int i = 0; i < m_target; ++i) {
    Id a = rng() % n, b = rng() % n;
    if (a != b) e.emplace_back(a, b);
  }
  // Occasionally add a hub so that the light layers have room to run.
  if (t % 3 == 0)
    for (Id v = 1; v < n && v < 40; ++v) e.emplace_back(0, v);
  return PdsGraph::from_edges(n, e);
}

bool is_edge_set(const PdsGraph& g, const std::vector<Id>& s) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (g.adjacent(s[i], s[j])) return true;
  return false;
}

}  // namespace

TEST_CASE("pds2_table examples") {
  CHECK(pds2_table(PdsGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}})).value == 4);
  CHECK(pds2_table(PdsGraph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})).value == 6);
  CHECK(pds2_table(PdsGraph::from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}})).value == 8);
  CHECK(pds2_table(PdsGraph::from_edges(1, {})).value == 1);
}

TEST_CASE("k = 2 solvers match the oracle on sparse graphs") {
  Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    auto g = sparse_graph(rng, t);
    const auto want = brute_force_pds(g, 2).value;
    auto a = pds2_table(g);
    auto b = pds2_sparse(g);
    REQUIRE(a.value == want);
    REQUIRE(b.value == want);
    REQUIRE(closed_coverage(g, a.witness) == want);
    REQUIRE(closed_coverage(g, b.witness) == want);
  }
  CHECK(pds2_sparse(PdsGraph::from_edges(2, {{0, 1}})).value == 2);
  CHECK(pds2_sparse(PdsGraph::from_edges(5, {})).value == 2);
  CHECK(pds2_sparse(PdsGraph::from_edges(1, {})).value == 1);
}

TEST_CASE("pds2_table operation counter") {
  Rng rng(103);
  auto g = random_bounded_degree_graph(rng, 500, 6);
  auto r = pds2_table(g);
  const double n = g.n(), d = g.max_degree();
  CHECK(static_cast<double>(r.stats.ops) <= 8 * (n * d + std::pow(d + 1, 4) + n * std::log2(n)));
}

TEST_CASE("pds2_heavy") {
  Rng rng(107);
  for (int t = 0; t < 150; ++t) {
    auto g = random_graph(rng, 2 + static_cast<int>(rng() % 59), 0.02 + 0.02 * (t % 8));
    REQUIRE(pds2_heavy(g, 1).value == std::max<std::int64_t>(
                                          0, restricted_pair_opt(g, [&](Id a, Id b) { return g.degree(a) >= 1 && g.degree(b) >= 1; })));
    for (int d : {2, 4}) {
      auto r = pds2_heavy(g, d);
      auto want = restricted_pair_opt(g, [&](Id a, Id b) { return g.degree(a) >= d && g.degree(b) >= d; });
      REQUIRE(r.value == std::max<std::int64_t>(want, 0));
      if (want >= 0) REQUIRE(closed_coverage(g, r.witness) == r.value);
    }
  }
  auto p4 = PdsGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto none = pds2_heavy(p4, 3);
  CHECK(none.value == 0);
  CHECK(none.witness.empty());
}

TEST_CASE("light layer tables and soundness") {
  Rng rng(109);
  int returned = 0, reported = 0;
  for (int t = 0; t < 300; ++t) {
    auto g = sparse_graph(rng, 3 * t);
    const int delta = g.max_degree();
    for (int d = 1; 4 * d <= delta; d *= 2) {
      auto in_vd = [&](Id v) { return g.degree(v) >= d && g.degree(v) < 2 * d; };
      const auto opt = brute_force_pds(g, 2).value;
      const auto layer_opt = restricted_pair_opt(g, [&](Id a, Id b) { return in_vd(a) || in_vd(b); });
      auto ctx = build_layer_context(g, d);
      if (ctx.early_exit.empty()) {
        std::vector<char> in_s = ctx.in_S;
        for (Id x : ctx.Hd)
          for (Id y : ctx.Vd) {
            std::int64_t cs = 0, cr = 0, nx_s = 0, union_s = 0;
            std::vector<Id> nx(g.neighbors(x).begin(), g.neighbors(x).end()), ny(g.neighbors(y).begin(), g.neighbors(y).end());
            nx.push_back(x);
            ny.push_back(y);
            auto has = [](const std::vector<Id>& v, Id z) { return std::find(v.begin(), v.end(), z) != v.end(); };
            for (Id s = 0; s < g.n(); ++s) {
              if (in_s[s] && !has(nx, s) && has(ny, s)) ++cs;
              if (!in_s[s] && has(nx, s) && has(ny, s)) ++cr;
              if (in_s[s] && has(nx, s)) ++nx_s;
              if (in_s[s] && (has(nx, s) || has(ny, s))) ++union_s;
            }
            auto f = [&](const auto& m) {
              auto it = m.find(pair_key(x, y));
              return it == m.end() ? 0 : it->second;
            };
            REQUIRE(f(ctx.C_S) == cs);
            REQUIRE(f(ctx.C_R) == cr);
            REQUIRE(union_s == nx_s + cs);
            REQUIRE(ctx.pair_value(g, x, y) == pair_value(g, x, y));
          }
      }
      auto r = pds2_light_layer(g, d);
      if (r) {
        ++returned;
        REQUIRE(r->value == layer_opt);
        REQUIRE(closed_coverage(g, r->witness) == r->value);
      } else {
        ++reported;
        REQUIRE(layer_opt < opt);
      }
    }
  }
  MESSAGE("layers returned " << returned << ", reported " << reported);
  CHECK(returned > 0);
  CHECK_THROWS_AS(pds2_light_layer(PdsGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}), 1), InputError);
}

TEST_CASE("apex dominating everything triggers an early exit") {
  // Hub 0 adjacent to all; a second hub 1 reaches many vertices outside N[0]? none exist,
  // so use two disjoint stars: the far star's centre has many neighbours in R.
  std::vector<std::pair<Id, Id>> e;
  for (Id v = 1; v <= 12; ++v) e.emplace_back(0, v);
  for (Id v = 14; v <= 23; ++v) e.emplace_back(13, v);
  e.emplace_back(1, 2);
  auto g = PdsGraph::from_edges(24, e);
  auto ctx = build_layer_context(g, 1);
  CHECK(ctx.early_exit == "apex-pair-wins");
  CHECK_FALSE(pds2_light_layer(g, 1).has_value());
  auto opt = brute_force_pds(g, 2);
  CHECK(g.degree(opt.witness[0]) >= 2);
  CHECK(g.degree(opt.witness[1]) >= 2);
}

TEST_CASE("edge_solution_scan") {
  std::vector<std::pair<Id, Id>> k5;
  for (Id a = 0; a < 5; ++a)
    for (Id b = a + 1; b < 5; ++b) k5.emplace_back(a, b);
  CHECK(edge_solution_scan(PdsGraph::from_edges(5, k5), 3)->value == 5);
  auto matching = PdsGraph::from_edges(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(edge_solution_scan(matching, 3)->value == 4);
  CHECK_FALSE(edge_solution_scan(PdsGraph::from_edges(5, {}), 3).has_value());

  Rng rng(113);
  for (int t = 0; t < 150; ++t) {
    auto g = random_graph(rng, 3 + static_cast<int>(rng() % 8), 0.1 + 0.05 * (t % 6));
    for (int k = 3; k <= 4; ++k) {
      std::int64_t want = -1;
      for_each_subset_lex(g.n(), std::min(k, g.n()), [&](const std::vector<Id>& s) {
        if (is_edge_set(g, s)) want = std::max(want, closed_coverage(g, s));
      });
      auto r = edge_solution_scan(g, k);
      if (want < 0) {
        REQUIRE_FALSE(r.has_value());
      } else {
        REQUIRE(r.has_value());
        REQUIRE(r->value == want);
        REQUIRE(is_edge_set(g, r->witness));
        REQUIRE(closed_coverage(g, r->witness) == want);
      }
    }
  }
}

TEST_CASE("independent_partial_ds and pds_sparse") {
  for (int k = 1; k <= 4; ++k) CHECK(independent_partial_ds(PdsGraph::from_edges(6, {}), k).value == k);
  auto matching = PdsGraph::from_edges(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(independent_partial_ds(matching, 2).value == brute_force_pds(matching, 2).value);

  Rng rng(127);
  for (int t = 0; t < 300; ++t) {
    auto g = random_graph(rng, 1 + static_cast<int>(rng() % 12), 0.05 + 0.07 * (t % 6));
    for (int k = 2; k <= 4; ++k) {
      const auto want = brute_force_pds(g, k).value;
      auto ind = independent_partial_ds(g, k);
      REQUIRE(ind.value <= want);
      REQUIRE(closed_coverage(g, ind.witness) == ind.value);
      auto r = pds_sparse(g, k);
      REQUIRE(r.value == want);
      REQUIRE(closed_coverage(g, r.witness) == want);
    }
  }

  // Star forest: the k largest closed stars.
  auto forest = PdsGraph::from_edges(12, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {7, 8}, {9, 10}});
  CHECK(pds_sparse(forest, 3).value == 4 + 3 + 2);
  std::vector<std::pair<Id, Id>> k6;
  for (Id a = 0; a < 6; ++a)
    for (Id b = a + 1; b < 6; ++b) k6.emplace_back(a, b);
  for (int k = 2; k <= 4; ++k) CHECK(pds_sparse(PdsGraph::from_edges(6, k6), k).value == 6);
}
