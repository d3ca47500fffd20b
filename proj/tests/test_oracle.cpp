#include "doctest.h"
#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"

using namespace mkc;

namespace {

CountMatrix random_01(Rng& rng, int r, int c) {
  CountMatrix m(r, c);
  for (auto& v : m.data) v = static_cast<std::int32_t>(rng() & 1);
  return m;
}

CountMatrix schoolbook(const CountMatrix& a, const CountMatrix& b) {
  CountMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      std::int32_t s = 0;
      for (int t = 0; t < a.cols; ++t) s += a.at(i, t) * b.at(t, j);
      c.at(i, j) = s;
    }
  return c;
}

}  // namespace

TEST_CASE("brute_force examples") {
  auto inst = CoverInstance::from_sets(3, {{0, 1}, {1, 2}, {2}});
  auto r0 = brute_force(inst, 0);
  CHECK(r0.value == 0);
  CHECK(r0.witness.empty());
  auto r2 = brute_force(inst, 2);
  CHECK(r2.value == 3);
  CHECK(r2.witness == std::vector<Id>{0, 1});
  CHECK(brute_force(inst, 7).value == coverage_value(inst, std::vector<Id>{0, 1, 2}));
}

TEST_CASE("parallel and serial brute force agree including witness") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_cover(rng, 1 + t % 12, 1 + t % 11, 0.3);
    for (int k = 0; k <= 4; ++k) {
      auto a = brute_force(inst, k), b = brute_force_serial(inst, k);
      REQUIRE(a.value == b.value);
      REQUIRE(a.witness == b.witness);
      REQUIRE(coverage_value(inst, a.witness) == a.value);
    }
  }
}

TEST_CASE("matrix_multiply") {
  Rng rng(1);
  auto m = random_01(rng, 4, 4);
  CountMatrix id(4, 4);
  for (int i = 0; i < 4; ++i) id.at(i, i) = 1;
  CHECK(matrix_multiply(id, m) == m);

  const int n = 9;
  CountMatrix row(1, n), col(n, 1);
  std::fill(row.data.begin(), row.data.end(), 1);
  std::fill(col.data.begin(), col.data.end(), 1);
  CHECK(matrix_multiply(row, col).at(0, 0) == n);

  auto a = random_01(rng, 4, 5), b = random_01(rng, 5, 3);
  CHECK(matrix_multiply(a, b) == schoolbook(a, b));
  CHECK(matrix_multiply_serial(a, b) == schoolbook(a, b));
  CHECK_THROWS_AS(matrix_multiply(a, a), InputError);
}

TEST_CASE("mm_baseline") {
  auto inst = CoverInstance::from_sets(3, {{0, 1}, {1, 2}, {2}});
  auto bm = build_baseline_matrices(inst, 2);
  // Row {0} against column {1} misses nothing.
  CHECK(bm.C.at(0, 1) == 0);
  CHECK(mm_baseline(inst, 2).value == 3);

  auto full = CoverInstance::from_sets(4, {{0, 1, 2, 3}, {1}, {2}});
  auto bf = build_baseline_matrices(full, 2);
  bool zero = false;
  for (auto v : bf.C.data) zero |= v == 0;
  CHECK(zero);
  CHECK(mm_baseline(full, 2).value == 4);

  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    auto r = random_cover(rng, 2 + t % 11, 1 + t % 12, 0.25);
    auto res = mm_baseline(r, 2);
    REQUIRE(res.value == brute_force(r, 2).value);
    REQUIRE(coverage_value(r, res.witness) == res.value);
  }
  for (int t = 0; t < 100; ++t) {
    auto r = random_cover(rng, 4 + t % 9, 2 + t % 11, 0.3);
    for (int k = 3; k <= 4; ++k) REQUIRE(mm_baseline(r, k).value == brute_force(r, k).value);
  }
  CHECK_THROWS_AS(mm_baseline(random_cover(rng, 60, 50, 0.1), 4, 1000), ResourceError);
}

TEST_CASE("baseline matrix entries match direct set arithmetic") {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_cover(rng, 8, 10, 0.3);
    auto bm = build_baseline_matrices(inst, 3);
    std::uniform_int_distribution<int> pr(0, bm.C.rows - 1), pc(0, bm.C.cols - 1);
    for (int s = 0; s < 100; ++s) {
      int r = pr(rng), c = pc(rng);
      auto u = sorted_union(bm.row_sets[r], bm.col_sets[c]);
      REQUIRE(bm.C.at(r, c) == inst.u() - coverage_value(inst, u));
    }
  }
}

TEST_CASE("exhaustive_bounded agrees with brute force and lists all optima") {
  Rng rng(29);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_cover(rng, 1 + t % 11, 1 + t % 10, 0.3);
    for (int k = 1; k <= 3; ++k) {
      auto b = exhaustive_bounded(inst, k);
      REQUIRE(b.value == brute_force(inst, k).value);
      size_t expected = 0;
      for_each_subset_lex(inst.n(), std::min(k, inst.n()), [&](const std::vector<Id>& s) {
        if (coverage_value(inst, s) == b.value) ++expected;
      });
      REQUIRE(b.optima.size() == expected);
    }
  }
}
