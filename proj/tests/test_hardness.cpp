#include <algorithm>

#include "doctest.h"
#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hardness.hpp"
#include "maxcover/oracle.hpp"

using namespace mkc;

namespace {

// Direct recomputation: loop over h-subsets and the coordinates of a(S).
std::int64_t product_by_blocks(const KhOvInstance& inst, const std::vector<int>& choice) {
  std::int64_t total = 0;
  for (const auto& sub : subsets_lex(inst.k, inst.h)) {
    const std::vector<int> S(sub.begin(), sub.end());
    for (int j : inst.coords_with_active_set(S)) {
      bool all = true;
      for (int i : S) all = all && inst.vectors[i][choice[i]][j];
      total += all;
    }
  }
  return total;
}

std::vector<std::vector<int>> all_choices(int k, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k, 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == size - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  return out;
}

KhOvInstance constant_instance(int k, int h, int size, int d, std::uint8_t value) {
  std::vector<std::vector<int>> active(d);
  for (int j = 0; j < d; ++j)
    for (int t = 0; t < h; ++t) active[j].push_back((j + t) % k);
  std::vector<std::vector<std::vector<std::uint8_t>>> vecs(
      k, std::vector<std::vector<std::uint8_t>>(size, std::vector<std::uint8_t>(d, value)));
  return KhOvInstance::make(k, h, vecs, active);
}

}  // namespace

TEST_CASE("khov_product basics") {
  const auto zero = constant_instance(3, 2, 3, 5, 0);
  const auto one = constant_instance(3, 2, 3, 5, 1);
  for (const auto& c : all_choices(3, 3)) {
    CHECK(khov_product(zero, c) == 0);
    CHECK(khov_product(one, c) == 5);
  }
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    auto inst = random_khov(rng, 3, 2, 4, 5, 0.5);
    for (const auto& c : all_choices(3, 4)) CHECK(khov_product(inst, c) == product_by_blocks(inst, c));
    const auto mx = khov_opt_max(inst);
    const auto mn = khov_opt_min(inst);
    CHECK(khov_product(inst, mx.choice) == mx.value);
    CHECK(khov_product(inst, mn.choice) == mn.value);
    for (const auto& c : all_choices(3, 4)) {
      CHECK(khov_product(inst, c) <= mx.value);
      CHECK(khov_product(inst, c) >= mn.value);
    }
  }
}

TEST_CASE("make validates and zeroes inactive entries") {
  std::vector<std::vector<std::vector<std::uint8_t>>> v(2, {{1, 1}});
  auto inst = KhOvInstance::make(2, 1, v, {{0}, {1}});
  CHECK(inst.vectors[0][0] == std::vector<std::uint8_t>{1, 0});
  CHECK(inst.vectors[1][0] == std::vector<std::uint8_t>{0, 1});
  CHECK(inst.check_invariants());
  CHECK_THROWS_AS(KhOvInstance::make(2, 2, v, {{0, 0}, {0, 1}}), InputError);
  CHECK_THROWS_AS(KhOvInstance::make(2, 2, v, {{0, 2}, {0, 1}}), InputError);
  CHECK_THROWS_AS(KhOvInstance::make(2, 3, v, {{0, 1}, {0, 1}}), InputError);
}

TEST_CASE("regularize_r makes r-tuples regular and keeps higher products") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    auto inst = random_khov(rng, 3, 3, 3, 4, 0.5);
    auto two = regularize_r(inst, 2);
    CHECK(two.check_invariants());
    CHECK(is_r_regular(two, 2));
    CHECK(products_preserved(inst, two, 3, 3));
    CHECK(two.d <= (4 * 3 + 1) * inst.d);
    // Idempotent in the sense of the property: still regular, triples unchanged.
    auto again = regularize_r(two, 2);
    CHECK(is_r_regular(again, 2));
    CHECK(products_preserved(two, again, 3, 3));

    auto one = regularize_r(inst, 1);
    CHECK(is_r_regular(one, 1));
    CHECK(products_preserved(inst, one, 2, 3));
  }
  CHECK_THROWS_AS(regularize_r(random_khov(rng, 3, 2, 2, 2, 0.5), 2), InputError);
}

TEST_CASE("regularize_full gives regularity below h") {
  Rng rng(23);
  for (int h = 2; h <= 3; ++h) {
    for (int t = 0; t < 30; ++t) {
      const int size = 1 + static_cast<int>(rng() % 4);
      const int d = 1 + static_cast<int>(rng() % 4);
      auto inst = random_khov(rng, 3, h, size, d, 0.5);
      auto reg = regularize_full(inst);
      for (int r = 1; r < h; ++r) CHECK(is_r_regular(reg, r));
      CHECK(products_preserved(inst, reg, h, h));
      CHECK(reg.base_dim == inst.d);
      for (const auto& c : all_choices(3, size)) CHECK(khov_product(reg, c) == khov_product(inst, c));
    }
  }
  // Identical vectors inside each family are regular at every level already.
  auto flat = constant_instance(3, 3, 3, 4, 1);
  CHECK(is_r_regular(flat, 1));
  CHECK(is_r_regular(flat, 2));
}

TEST_CASE("ov_to_maxip threshold") {
  Rng rng(29);
  int with = 0, without = 0;
  for (int t = 0; t < 200; ++t) {
    const int h = 2 + static_cast<int>(rng() % 2);
    auto inst = random_khov(rng, 3, h, 2 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 4), 0.7);
    auto [lifted, thr] = ov_to_maxip(inst);
    CHECK(thr == static_cast<std::int64_t>(binom(3, h)) * inst.d);
    const bool orth = khov_opt_min(inst).value == 0;
    const auto mx = khov_opt_max(lifted).value;
    if (orth) {
      CHECK(mx == thr);
      ++with;
    } else {
      CHECK(mx <= thr - 1);
      ++without;
    }
    for (const auto& c : all_choices(3, inst.size))
      CHECK(khov_product(lifted, c) == thr - khov_product(inst, c));
  }
  CHECK(with > 0);
  CHECK(without > 0);
  auto empty = random_khov(rng, 2, 2, 2, 0, 0.5);
  CHECK(ov_to_maxip(empty).second == 0);
}

TEST_CASE("reduce_to_cover equivalence and Eq identity for k = h = 2") {
  Rng rng(31);
  int orth = 0, non_orth = 0;
  for (int t = 0; t < 25; ++t) {
    auto inst = regularize_full(random_khov(rng, 2, 2, 2 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 4), 0.6));
    auto out = reduce_to_cover(inst);
    CHECK(out.sign == -1);
    CHECK(out.inventory.s == 2);
    CHECK(out.cover.max_frequency() <= out.inventory.freq_bound);
    CHECK(check_two_family_identity(inst, out));
    auto chk = verify_reduction(inst, out);
    CHECK(chk.ok());
    // Orthogonal pair iff the optimum reaches t.
    if (chk.khov_best == 0) {
      CHECK(chk.graph_opt == out.t);
      ++orth;
    } else {
      CHECK(chk.graph_opt < out.t);
      ++non_orth;
    }
  }
  CHECK(orth > 0);
  CHECK(non_orth > 0);
}

TEST_CASE("reduce_to_cover for h = 3 uses maxIP orientation") {
  Rng rng(37);
  for (int t = 0; t < 8; ++t) {
    auto inst = regularize_full(random_khov(rng, 3, 3, 2, 2, 0.5));
    auto out = reduce_to_cover(inst);
    CHECK(out.sign == 1);
    auto chk = verify_reduction(inst, out);
    CHECK(chk.ok());
  }
}

TEST_CASE("reduce_to_cover rejects bad parameters") {
  Rng rng(41);
  auto raw = random_khov(rng, 2, 2, 3, 3, 0.5);
  auto inst = regularize_full(raw);
  ReductionParams p;
  p.delta_f = 6;  // one group per family
  CHECK_THROWS_AS(reduce_to_cover(inst, p), InputError);
  p = {};
  p.u = 5;
  p.delta_s = 6;
  CHECK_THROWS_AS(reduce_to_cover(inst, p), InputError);
  p = {};
  p.multiplier = 0;
  CHECK_THROWS_AS(reduce_to_cover(inst, p), InputError);
  // Only regular instances are accepted; a random one is almost never 1-regular.
  bool threw = false;
  for (int t = 0; t < 10 && !threw; ++t) {
    auto r = random_khov(rng, 2, 2, 3, 4, 0.5);
    if (is_r_regular(r, 1)) continue;
    CHECK_THROWS_AS(reduce_to_cover(r), InputError);
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("reduce_to_cover padding keeps the optimum") {
  Rng rng(43);
  auto inst = regularize_full(random_khov(rng, 2, 2, 3, 3, 0.5));
  auto plain = reduce_to_cover(inst);
  ReductionParams p;
  p.n = plain.cover.n() + 4;
  p.u = plain.cover.u() + 10;
  auto padded = reduce_to_cover(inst, p);
  CHECK(padded.cover.n() == p.n);
  CHECK(padded.cover.u() == p.u);
  CHECK(padded.inventory.padding == 14);
  CHECK(padded.t == plain.t);
  CHECK(verify_reduction(inst, padded).ok());
}

TEST_CASE("reduce_to_pds confinement and equivalence") {
  Rng rng(47);
  for (int t = 0; t < 15; ++t) {
    auto inst = regularize_full(random_khov(rng, 2, 2, 2 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 3), 0.5));
    auto out = reduce_to_pds(inst);
    auto cover = reduce_to_cover(inst);
    // Same D-part; the P-gadgets differ in size and each X vertex adds itself.
    const auto& a = out.inventory;
    const auto& b = cover.inventory;
    CHECK(out.t - 2 - 2 * (a.s - 1) * a.p_size == cover.t - 2 * (b.s - 1) * b.p_size);
    CHECK(check_two_family_identity(inst, out));
    auto chk = verify_reduction(inst, out);
    CHECK(chk.confined);
    CHECK(chk.ok());
  }
  // Isolated padding leaves the optimum alone.
  auto inst = regularize_full(random_khov(rng, 2, 2, 2, 2, 0.5));
  auto base = reduce_to_pds(inst);
  ReductionParams p;
  p.n = base.graph.n() + 7;
  auto padded = reduce_to_pds(inst, p);
  CHECK(padded.graph.n() == p.n);
  CHECK(verify_reduction(inst, padded).graph_opt == verify_reduction(inst, base).graph_opt);
}

TEST_CASE("sparse reduction stays within its edge bound") {
  Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    auto inst = regularize_full(random_khov(rng, 2, 2, 4, 2, 0.5));
    auto out = reduce_to_pds_sparse(inst, 64);
    CHECK(out.inventory.s == 2);
    CHECK(out.graph.m() <= out.inventory.edge_bound);
    CHECK(verify_reduction(inst, out).ok());
  }
  auto inst = regularize_full(random_khov(rng, 2, 2, 4, 2, 0.5));
  CHECK_THROWS_AS(reduce_to_pds_sparse(inst, 2), InputError);
}

TEST_CASE("hyperclique_to_khov") {
  SUBCASE("complete hypergraph has no coordinates") {
    PartiteHypergraph g;
    g.parts = 3;
    g.part_size = 2;
    g.h = 3;
    Rng rng(1);
    g = random_partite_hypergraph(rng, 3, 2, 3, 1.0);
    auto inst = hyperclique_to_khov(g, 1);
    CHECK(inst.d == 0);
    CHECK(has_hyperclique(g));
    CHECK(khov_opt_min(inst).value == 0);
  }
  SUBCASE("one deleted edge") {
    Rng rng(2);
    auto g = random_partite_hypergraph(rng, 3, 2, 3, 1.0);
    const auto gone = g.edges[3];
    g.edges.erase(g.edges.begin() + 3);
    auto inst = hyperclique_to_khov(g, 1);
    CHECK(inst.d == 1);
    for (const auto& c : all_choices(3, 2)) {
      bool covers = true;
      for (int i = 0; i < 3; ++i) covers = covers && gone[i] == i * 2 + c[i];
      CHECK((khov_product(inst, c) >= 1) == covers);
    }
  }
  SUBCASE("random equivalence") {
    Rng rng(3);
    int yes = 0, no = 0;
    for (int t = 0; t < 60; ++t) {
      auto g = random_partite_hypergraph(rng, 3, 1 + static_cast<int>(rng() % 4), 3, 0.15);
      auto inst = hyperclique_to_khov(g, 1);
      const bool clique = has_hyperclique(g);
      CHECK(clique == (khov_opt_min(inst).value == 0));
      (clique ? yes : no)++;
    }
    for (int t = 0; t < 30; ++t) {
      // q = 2: four blocks, two families, graphs (h = 2).
      auto g = random_partite_hypergraph(rng, 4, 2, 2, 0.75);
      auto inst = hyperclique_to_khov(g, 2);
      CHECK(inst.k == 2);
      CHECK(has_hyperclique(g) == (khov_opt_min(inst).value == 0));
    }
    CHECK(yes > 0);
    CHECK(no > 0);
  }
  SUBCASE("malformed input") {
    PartiteHypergraph g;
    g.parts = 3;
    g.part_size = 2;
    g.h = 3;
    g.edges = {{0, 1, 4}};
    CHECK_THROWS_AS(hyperclique_to_khov(g, 1), InputError);
    g.edges = {{0, 2, 9}};
    CHECK_THROWS_AS(hyperclique_to_khov(g, 1), InputError);
    g.edges = {};
    CHECK_THROWS_AS(hyperclique_to_khov(g, 2), InputError);
  }
}
