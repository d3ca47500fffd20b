#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/hypercut.hpp"
#include "maxcover/random.hpp"

using namespace mkc;

namespace {

bool common_element(const CoverInstance& inst, Id a, Id b, Id c) {
  for (Id y : inst.set(a)) {
    auto sb = inst.set(b), sc = inst.set(c);
    if (std::binary_search(sb.begin(), sb.end(), y) && std::binary_search(sc.begin(), sc.end(), y)) return true;
  }
  return false;
}

// Recursive definition: peel any pair that hangs off the rest by a hyperedge.
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

bool crosses_scan(const CoverInstance& inst, const std::vector<Id>& a, const std::vector<Id>& b,
                  const std::vector<Id>& c) {
  for (Id x : a)
    for (Id y : b)
      for (Id z : c)
        if (common_element(inst, x, y, z)) return true;
  return false;
}

}  // namespace

TEST_CASE("is_hyperedge") {
  auto inst = CoverInstance::from_sets(6, {{1, 5}, {2, 5}, {0, 3, 5}, {1, 2}, {1, 3}});
  CHECK(is_hyperedge(inst, 0, 1, 2) == std::optional<Id>(5));
  CHECK(is_hyperedge(inst, 0, 3, 4) == std::optional<Id>(1));
  // 1 and 4 are disjoint, so no common element.
  CHECK_FALSE(is_hyperedge(inst, 1, 3, 4).has_value());
  auto tri = CoverInstance::from_sets(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(is_hyperedge(tri, 0, 1, 2).has_value());
  CHECK_THROWS_AS(is_hyperedge(tri, 0, 0, 1), InputError);

  auto k4 = pds_to_cover(PdsGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  for_each_subset_lex(4, 3, [&](const std::vector<Id>& s) { CHECK(is_hyperedge(k4, s[0], s[1], s[2]).has_value()); });
}

TEST_CASE("list_hyperedges") {
  auto low = CoverInstance::from_sets(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(list_hyperedges(low).empty());

  auto hot = CoverInstance::from_sets(3, {{0, 1}, {0, 2}, {0}, {0, 1}});
  auto hs = list_hyperedges(hot);
  CHECK(hs.size() == 4);
  for (auto& h : hs) CHECK(h.witness == 0);

  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_cover(rng, 3 + t % 8, 2 + t % 9, 0.35);
    std::vector<std::array<Id, 3>> expect;
    for_each_subset_lex(inst.n(), 3, [&](const std::vector<Id>& s) {
      if (common_element(inst, s[0], s[1], s[2])) expect.push_back({s[0], s[1], s[2]});
    });
    auto got = list_hyperedges(inst);
    REQUIRE(got.size() == expect.size());
    for (size_t i = 0; i < got.size(); ++i) {
      REQUIRE(got[i].v == expect[i]);
      REQUIRE(got[i].witness == *is_hyperedge(inst, got[i].v[0], got[i].v[1], got[i].v[2]));
    }
    REQUIRE(got.size() <= static_cast<size_t>(inst.u()) * binom(inst.max_frequency(), 3));
  }
}

TEST_CASE("enumerate_bundles") {
  auto low = CoverInstance::from_sets(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(enumerate_bundles(low, 0).size() == 4);
  CHECK(enumerate_bundles(low, 1).empty());

  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_cover(rng, 3 + t % 8, 2 + t % 9, 0.3);
    for (int c = 0; c <= 2; ++c) {
      SolveStats st;
      auto got = enumerate_bundles(inst, c, &st);
      std::vector<std::vector<Id>> expect;
      for_each_subset_lex(inst.n(), 1 + 2 * c, [&](const std::vector<Id>& s) {
        if (is_bundle_def(inst, s)) expect.push_back(s);
      });
      REQUIRE(got.size() == expect.size());
      for (size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].vertices == expect[i]);
        REQUIRE(got[i].vertices.size() == static_cast<size_t>(1 + 2 * c));
        REQUIRE(bundle_is_valid(inst, got[i]));
      }
      const double envelope = inst.n() * std::pow(inst.max_set_size(), c) * std::pow(inst.max_frequency(), 2 * c);
      REQUIRE(static_cast<double>(got.size()) <= envelope * (1 + 2 * c));
      REQUIRE(static_cast<double>(st.ops) <= 8 * envelope);
    }
  }
}

TEST_CASE("maximal bundles can overlap") {
  // Sets 0 and 1 share both elements; 2 holds only element 0, 3 only element 1.
  auto inst = CoverInstance::from_sets(2, {{0, 1}, {0, 1}, {0}, {1}});
  auto mb = maximal_bundles(inst);
  CHECK(mb == std::vector<std::vector<Id>>{{0, 1, 2}, {0, 1, 3}});
}

TEST_CASE("is_arity_reducing_hypercut") {
  auto low = CoverInstance::from_sets(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(is_arity_reducing_hypercut(low, {0}, {1}, {2, 3}));
  auto hot = CoverInstance::from_sets(1, {{0}, {0}, {0}});
  CHECK_FALSE(is_arity_reducing_hypercut(hot, {0}, {1}, {2}));
  CHECK(is_arity_reducing_hypercut(hot, {0, 1}, {2}, {}));
  CHECK_THROWS_AS(is_arity_reducing_hypercut(hot, {0}, {0}, {1}), InputError);

  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_cover(rng, 6 + t % 6, 4 + t % 6, 0.35);
    std::vector<Id> ids(inst.n());
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(6);
    std::array<std::vector<Id>, 3> p;
    for (Id x : ids) p[rng() % 3].push_back(x);
    REQUIRE(is_arity_reducing_hypercut(inst, p[0], p[1], p[2]) == !crosses_scan(inst, p[0], p[1], p[2]));
  }
}

TEST_CASE("check_two_bundle_decomposition") {
  auto low = CoverInstance::from_sets(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto d0 = check_two_bundle_decomposition(low, {0, 1, 2, 3});
  CHECK(d0.D1.vertices.size() + d0.D2.vertices.size() <= 2);

  auto hot = CoverInstance::from_sets(1, {{0}, {0}, {0}});
  auto d1 = check_two_bundle_decomposition(hot, {0, 1, 2});
  CHECK(d1.D1.vertices == std::vector<Id>{0, 1, 2});
  CHECK(d1.parts[0].empty());

  Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    auto inst = random_cover(rng, 9 + t % 4, 3 + t % 8, 0.2 + 0.05 * (t % 6));
    std::vector<Id> ids(inst.n());
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(1 + t % 9);
    auto d = check_two_bundle_decomposition(inst, ids);
    REQUIRE(is_arity_reducing_hypercut(inst, d.parts[0], d.parts[1], d.parts[2]));
  }
}
