#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hypercut.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"
#include "maxcover/triangle.hpp"

using namespace mkc;

namespace {

std::vector<char> random_mask(Rng& rng, int u) {
  std::vector<char> m(u);
  for (auto& c : m) c = (rng() % 4) != 0;
  return m;
}

std::int64_t restricted_union(const CoverInstance& inst, const std::vector<Id>& xs, const std::vector<char>& mask) {
  std::vector<char> seen(inst.u(), 0);
  std::int64_t c = 0;
  for (Id x : xs)
    for (Id y : inst.set(x))
      if ((mask.empty() || mask[y]) && !seen[y]) {
        seen[y] = 1;
        ++c;
      }
  return c;
}

std::int64_t restricted_common(const CoverInstance& inst, const std::vector<Id>& a, const std::vector<Id>& b,
                               const std::vector<char>& mask) {
  return restricted_union(inst, a, mask) + restricted_union(inst, b, mask) -
         restricted_union(inst, sorted_union(a, b), mask);
}

CoverInstance restrict_to_mask(const CoverInstance& inst, const std::vector<char>& mask) {
  std::vector<char> removed(inst.u());
  for (int y = 0; y < inst.u(); ++y) removed[y] = !mask[y];
  std::vector<Id> all(inst.n());
  std::iota(all.begin(), all.end(), 0);
  return restrict_instance(inst, all, &removed);
}

}  // namespace

TEST_CASE("balanced part sizes") {
  CHECK(balanced_sizes(1) == std::array<int, 3>{1, 0, 0});
  CHECK(balanced_sizes(2) == std::array<int, 3>{1, 1, 0});
  CHECK(balanced_sizes(3) == std::array<int, 3>{1, 1, 1});
  CHECK(balanced_sizes(7) == std::array<int, 3>{3, 2, 2});
}

TEST_CASE("build_tripartite") {
  auto inst = CoverInstance::from_sets(5, {{0, 1, 2}, {2, 3}, {4}});
  std::vector<char> mask = {1, 1, 0, 1, 1};
  auto g = build_tripartite(inst, {0, 1, 2}, mask, 3);
  for (int p = 0; p < 3; ++p) {
    REQUIRE(g.parts[p].size() == 3);
    CHECK(g.node_w[p] == std::vector<std::int64_t>{2, 1, 1});
  }
  auto g1 = build_tripartite(inst, {0, 1, 2}, {}, 1);
  CHECK(g1.parts[0].size() == 3);
  CHECK(g1.parts[1].size() == 1);
  CHECK(g1.parts[2].size() == 1);
  CHECK(g1.node_w[1][0] == 0);
  CHECK(max_weight_triangle(g1).weight == 3);

  Rng rng(47);
  CHECK_THROWS_AS(build_tripartite(random_cover(rng, 40, 20, 0.2), std::vector<Id>(40, 0), {}, 9, 1000),
                  ResourceError);

  for (int t = 0; t < 20; ++t) {
    auto r = random_cover(rng, 8, 10, 0.3);
    auto m = random_mask(rng, r.u());
    std::vector<Id> xs = {0, 2, 3, 5, 6, 7};
    const int k = 2 + t % 5;
    auto sg = build_tripartite(r, xs, m, k);
    for (int s = 0; s < 50; ++s) {
      int p = rng() % 3, q = (p + 1 + rng() % 2) % 3;
      if (p > q) std::swap(p, q);
      size_t i = rng() % sg.parts[p].size(), j = rng() % sg.parts[q].size();
      REQUIRE(sg.node_w[p][i] == restricted_union(r, sg.parts[p][i], m));
      REQUIRE(sg.edge(p, q, i, j) == -restricted_common(r, sg.parts[p][i], sg.parts[q][j], m));
      REQUIRE(sg.node_w[p][i] >= 0);
      REQUIRE(sg.node_w[p][i] <= k * r.max_set_size());
      REQUIRE(sg.edge(p, q, i, j) >= -static_cast<std::int64_t>(k) * k * r.max_set_size());
    }
  }
}

TEST_CASE("max_weight_triangle matches exhaustive scan") {
  auto empty = CoverInstance::from_sets(2, {{}, {}, {}});
  auto z = max_weight_triangle(build_tripartite(empty, {0, 1, 2}, {}, 3));
  CHECK(z.weight == 0);
  CHECK(z.index == std::array<size_t, 3>{0, 0, 0});

  Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    auto r = random_cover(rng, 4 + t % 6, 3 + t % 8, 0.3);
    auto m = random_mask(rng, r.u());
    std::vector<Id> xs(r.n());
    std::iota(xs.begin(), xs.end(), 0);
    const int k = 1 + t % 6;
    auto g = build_tripartite(r, xs, m, k);
    std::int64_t bw = std::numeric_limits<std::int64_t>::min();
    std::array<size_t, 3> bk{};
    for (size_t i = 0; i < g.parts[0].size(); ++i)
      for (size_t j = 0; j < g.parts[1].size(); ++j)
        for (size_t l = 0; l < g.parts[2].size(); ++l) {
          auto w = g.triangle_weight(i, j, l);
          if (w > bw) {
            bw = w;
            bk = {i, j, l};
          }
        }
    auto a = max_weight_triangle(g), b = max_weight_triangle_serial(g);
    REQUIRE(a.weight == bw);
    REQUIRE(a.index == bk);
    REQUIRE(b.index == bk);
    // Never above the best k-subset of X' on Y'.
    REQUIRE(a.weight <= brute_force(restrict_to_mask(r, m), k).value);
  }
}

TEST_CASE("triangle weight bounds") {
  Rng rng(59);
  for (int t = 0; t < 50; ++t) {
    auto r = random_cover(rng, 7 + t % 4, 5 + t % 6, 0.3);
    auto m = random_mask(rng, r.u());
    auto rr = restrict_to_mask(r, m);
    std::vector<Id> xs(r.n());
    std::iota(xs.begin(), xs.end(), 0);
    auto g = build_tripartite(r, xs, m, 3 + t % 4);
    for (int s = 0; s < 20; ++s) {
      size_t i = rng() % g.parts[0].size(), j = rng() % g.parts[1].size(), l = rng() % g.parts[2].size();
      const auto all = sorted_union(sorted_union(g.parts[0][i], g.parts[1][j]), g.parts[2][l]);
      const auto w = g.triangle_weight(i, j, l);
      REQUIRE(w <= restricted_union(r, all, m));
      const bool disjoint = all.size() == g.parts[0][i].size() + g.parts[1][j].size() + g.parts[2][l].size();
      if (disjoint && is_arity_reducing_hypercut(rr, g.parts[0][i], g.parts[1][j], g.parts[2][l]))
        REQUIRE(w == restricted_union(r, all, m));
    }
  }
}

TEST_CASE("hyperedge-free instances reach the restricted optimum") {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    // Each element in at most two sets, so no hyperedges at all.
    std::vector<std::vector<Id>> sets(6 + t % 4);
    const int u = 8 + t % 5;
    for (Id y = 0; y < u; ++y) {
      int a = rng() % sets.size(), b = rng() % sets.size();
      sets[a].push_back(y);
      if (b != a && rng() % 2) sets[b].push_back(y);
    }
    auto r = CoverInstance::from_sets(u, sets);
    std::vector<Id> xs(r.n());
    std::iota(xs.begin(), xs.end(), 0);
    const int k = 1 + t % 5;
    REQUIRE(max_weight_triangle(build_tripartite(r, xs, {}, k)).weight == brute_force(r, k).value);
  }
}
