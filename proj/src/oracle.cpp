#include "maxcover/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"

namespace mkc {

namespace {

void check_dims(const CountMatrix& A, const CountMatrix& B) {
  if (A.cols != B.rows)
    throw InputError("matrix_multiply: inner dimensions differ (" + std::to_string(A.cols) + " vs " +
                     std::to_string(B.rows) + ")");
}

void multiply_rows(const CountMatrix& A, const CountMatrix& B, CountMatrix& C, int r) {
  std::int32_t* out = C.data.data() + static_cast<size_t>(r) * C.cols;
  const std::int32_t* a = A.data.data() + static_cast<size_t>(r) * A.cols;
  for (int t = 0; t < A.cols; ++t) {
    const std::int32_t av = a[t];
    if (av == 0) continue;
    const std::int32_t* b = B.data.data() + static_cast<size_t>(t) * B.cols;
    for (int c = 0; c < B.cols; ++c) out[c] += av * b[c];
  }
}

// Depth-first search over index-increasing subsets with per-element counters.
// Candidates are visited in lexicographic order, and only strictly better
// values replace the incumbent, so the result is the lex-smallest optimum.
struct SubsetSearch {
  const CoverInstance& inst;
  int k;
  std::vector<int> cnt;
  std::vector<Id> cur;
  std::int64_t covered = 0;
  std::int64_t best = -1;
  std::vector<Id> best_set;
  std::uint64_t unions = 0;

  SubsetSearch(const CoverInstance& in, int kk) : inst(in), k(kk), cnt(in.u(), 0) {}

  void add(Id i) {
    for (Id y : inst.set(i))
      if (cnt[y]++ == 0) ++covered;
    cur.push_back(i);
  }
  void remove(Id i) {
    for (Id y : inst.set(i))
      if (--cnt[y] == 0) --covered;
    cur.pop_back();
  }

  void run_from(Id start) {
    if (static_cast<int>(cur.size()) == k) {
      ++unions;
      if (covered > best) {
        best = covered;
        best_set = cur;
      }
      return;
    }
    const int need = k - static_cast<int>(cur.size());
    for (Id i = start; i <= inst.n() - need; ++i) {
      add(i);
      run_from(i + 1);
      remove(i);
    }
  }
};

bool better(std::int64_t v, const std::vector<Id>& w, std::int64_t bv, const std::vector<Id>& bw) {
  if (v != bv) return v > bv;
  return w < bw;
}

}  // namespace

CountMatrix matrix_multiply_serial(const CountMatrix& A, const CountMatrix& B) {
  check_dims(A, B);
  CountMatrix C(A.rows, B.cols);
  for (int r = 0; r < A.rows; ++r) multiply_rows(A, B, C, r);
  return C;
}

CountMatrix matrix_multiply(const CountMatrix& A, const CountMatrix& B) {
  check_dims(A, B);
  CountMatrix C(A.rows, B.cols);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < A.rows; ++r) multiply_rows(A, B, C, r);
  return C;
}

SolveResult brute_force_serial(const CoverInstance& inst, int k) {
  SolveResult res;
  k = std::min(std::max(k, 0), inst.n());
  SubsetSearch s(inst, k);
  s.run_from(0);
  res.value = std::max<std::int64_t>(s.best, 0);
  res.witness = s.best_set;
  res.stats.unions = s.unions;
  res.stats.regime = "oracle";
  return res;
}

SolveResult brute_force(const CoverInstance& inst, int k) {
  k = std::min(std::max(k, 0), inst.n());
  if (k == 0) return brute_force_serial(inst, 0);
  const int roots = inst.n() - k + 1;
  std::vector<std::int64_t> val(roots, -1);
  std::vector<std::vector<Id>> wit(roots);
  std::vector<std::uint64_t> cnt(roots, 0);
#pragma omp parallel
  {
    SubsetSearch s(inst, k);
#pragma omp for schedule(dynamic, 1)
    for (int r = 0; r < roots; ++r) {
      s.best = -1;
      s.best_set.clear();
      s.unions = 0;
      s.add(r);
      s.run_from(r + 1);
      s.remove(r);
      val[r] = s.best;
      wit[r] = s.best_set;
      cnt[r] = s.unions;
    }
  }
  SolveResult res;
  res.value = -1;
  for (int r = 0; r < roots; ++r) {
    res.stats.unions += cnt[r];
    if (better(val[r], wit[r], res.value, res.witness)) {
      res.value = val[r];
      res.witness = wit[r];
    }
  }
  res.stats.regime = "oracle";
  return res;
}

SolveResult brute_force_pds(const PdsGraph& g, int k) {
  SolveResult res;
  k = std::min(std::max(k, 0), g.n());
  std::vector<int> cnt(g.n(), 0);
  std::vector<Id> cur;
  std::int64_t covered = 0;
  std::int64_t best = -1;
  auto touch = [&](Id v, int delta) {
    auto bump = [&](Id y) {
      if (delta > 0) {
        if (cnt[y]++ == 0) ++covered;
      } else if (--cnt[y] == 0) {
        --covered;
      }
    };
    bump(v);
    for (Id w : g.neighbors(v)) bump(w);
  };
  auto rec = [&](auto&& self, Id start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      ++res.stats.unions;
      if (covered > best) {
        best = covered;
        res.witness = cur;
      }
      return;
    }
    const int need = k - static_cast<int>(cur.size());
    for (Id v = start; v <= g.n() - need; ++v) {
      touch(v, 1);
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
      touch(v, -1);
    }
  };
  rec(rec, 0);
  res.value = std::max<std::int64_t>(best, 0);
  res.stats.regime = "oracle";
  return res;
}

BaselineMatrices build_baseline_matrices(const CoverInstance& inst, int k, std::int64_t budget) {
  const int n = inst.n();
  const int u = inst.u();
  const int kr = (k + 1) / 2;
  const int kc = k / 2;
  const std::uint64_t nr = binom(n, kr);
  const std::uint64_t nc = binom(n, kc);
  const long double entries = static_cast<long double>(nr) * u + static_cast<long double>(u) * nc +
                              static_cast<long double>(nr) * nc;
  if (entries > static_cast<long double>(budget))
    throw ResourceError("mm_baseline: matrices need ~" + std::to_string(static_cast<long long>(entries)) +
                        " entries, budget is " + std::to_string(budget) + "; use brute_force instead");

  BaselineMatrices bm;
  bm.row_sets = subsets_colex(n, kr);
  bm.col_sets = subsets_colex(n, kc);
  const int R = static_cast<int>(bm.row_sets.size());
  const int Cn = static_cast<int>(bm.col_sets.size());
  bm.A = CountMatrix(R, u);
  bm.B = CountMatrix(u, Cn);
  CoverageScratch scratch(u);
  for (int r = 0; r < R; ++r) {
    scratch.next();
    for (Id x : bm.row_sets[r])
      for (Id y : inst.set(x)) scratch.test_and_set(y);
    for (Id y = 0; y < u; ++y) bm.A.at(r, y) = scratch.test(y) ? 0 : 1;
  }
  for (int c = 0; c < Cn; ++c) {
    scratch.next();
    for (Id x : bm.col_sets[c])
      for (Id y : inst.set(x)) scratch.test_and_set(y);
    for (Id y = 0; y < u; ++y) bm.B.at(y, c) = scratch.test(y) ? 0 : 1;
  }
  bm.C = matrix_multiply(bm.A, bm.B);
  return bm;
}

SolveResult mm_baseline(const CoverInstance& inst, int k, std::int64_t budget) {
  k = std::min(std::max(k, 0), inst.n());
  if (k < 2) return brute_force_serial(inst, k);
  const BaselineMatrices bm = build_baseline_matrices(inst, k, budget);
  // A row and column may share sets; the union then has fewer than k members
  // but never beats a proper k-subset, so the minimum is unaffected.
  int br = 0, bc = 0;
  std::int32_t bmin = bm.C.rows > 0 && bm.C.cols > 0 ? bm.C.at(0, 0) : 0;
  for (int r = 0; r < bm.C.rows; ++r)
    for (int c = 0; c < bm.C.cols; ++c)
      if (bm.C.at(r, c) < bmin) {
        bmin = bm.C.at(r, c);
        br = r;
        bc = c;
      }
  SolveResult res;
  res.value = inst.u() - bmin;
  std::vector<Id> w = sorted_union(bm.row_sets[br], bm.col_sets[bc]);
  // Pad overlapping picks back up to k members with the smallest unused ids.
  for (Id x = 0; static_cast<int>(w.size()) < k && x < inst.n(); ++x)
    if (!std::binary_search(w.begin(), w.end(), x)) w.insert(std::upper_bound(w.begin(), w.end(), x), x);
  res.witness = std::move(w);
  res.stats.unions = static_cast<std::uint64_t>(bm.C.rows) * bm.C.cols;
  res.stats.ops = static_cast<std::uint64_t>(bm.A.rows) * bm.A.cols * bm.B.cols;
  res.stats.regime = "mm";
  return res;
}

BoundedSearchResult exhaustive_bounded(const CoverInstance& inst, int k, size_t max_optima) {
  BoundedSearchResult out;
  k = std::min(std::max(k, 0), inst.n());
  if (k == 0) {
    out.optima.push_back({});
    return out;
  }
  const std::vector<Id> order = degree_order(inst);
  const int n = inst.n();
  // deg_prefix[i] = sum of the first i degrees in `order`.
  std::vector<std::int64_t> deg_prefix(n + 1, 0);
  for (int i = 0; i < n; ++i) deg_prefix[i + 1] = deg_prefix[i] + inst.degree(order[i]);

  // Coverage state is one bitset per depth.  Sets larger than the bitset are
  // merged word by word from a precomputed mask, the rest bit by bit.
  const size_t words = (static_cast<size_t>(inst.u()) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> mask(n);
  for (Id x = 0; x < n; ++x) {
    if (static_cast<size_t>(inst.degree(x)) <= words) continue;
    mask[x].assign(words, 0);
    for (Id y : inst.set(x)) mask[x][y >> 6] |= std::uint64_t{1} << (y & 63);
  }
  std::vector<std::vector<std::uint64_t>> level(k + 1, std::vector<std::uint64_t>(words, 0));
  std::vector<std::int64_t> covered(k + 1, 0);

  // Seed the incumbent with the greedy top-k so pruning starts tight.
  std::int64_t best = 0;
  {
    CoverageScratch sc(inst.u());
    sc.next();
    for (int i = 0; i < k; ++i)
      for (Id y : inst.set(order[i]))
        if (sc.test_and_set(y)) ++best;
  }

  std::vector<Id> cur;
  auto rec = [&](auto&& self, int pos) -> void {
    ++out.nodes;
    const int depth = static_cast<int>(cur.size());
    const std::int64_t have = covered[depth];
    const int need = k - depth;
    if (need == 0) {
      if (have > best) {
        best = have;
        out.optima.clear();
        out.truncated = false;
      }
      if (have == best) {
        if (out.optima.size() < max_optima) {
          std::vector<Id> s = cur;
          std::sort(s.begin(), s.end());
          out.optima.push_back(std::move(s));
        } else {
          out.truncated = true;
        }
      }
      return;
    }
    for (int i = pos; i <= n - need; ++i) {
      // Order is degree-descending, so the next `need` degrees bound the gain.
      if (have + deg_prefix[i + need] - deg_prefix[i] < best) return;
      const Id x = order[i];
      auto& next = level[depth + 1];
      const auto& prev = level[depth];
      std::int64_t c = have;
      if (!mask[x].empty()) {
        const auto& mx = mask[x];
        for (size_t w = 0; w < words; ++w) {
          c += std::popcount(mx[w] & ~prev[w]);
          next[w] = prev[w] | mx[w];
        }
      } else {
        std::copy(prev.begin(), prev.end(), next.begin());
        for (Id y : inst.set(x)) {
          const std::uint64_t bit = std::uint64_t{1} << (y & 63);
          if (!(next[y >> 6] & bit)) {
            next[y >> 6] |= bit;
            ++c;
          }
        }
      }
      covered[depth + 1] = c;
      cur.push_back(x);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  out.value = best;
  std::sort(out.optima.begin(), out.optima.end());
  return out;
}

}  // namespace mkc
