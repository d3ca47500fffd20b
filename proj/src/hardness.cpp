#include "maxcover/hardness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"
#include "maxcover/oracle.hpp"

namespace mkc {

namespace {

constexpr std::int64_t kMaxElements = std::int64_t{1} << 26;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Calls f(choice) for every vector of `len` indices in [0,base), last index fastest.
template <class F>
void for_each_tuple(int len, int base, F&& f) {
  if (base <= 0 && len > 0) return;
  std::vector<int> c(len, 0);
  while (true) {
    f(c);
    int i = len - 1;
    while (i >= 0 && c[i] == base - 1) c[i--] = 0;
    if (i < 0) return;
    ++c[i];
  }
}

// Pattern entry: b's t-th bit (most significant first) flips the original value.
std::uint8_t pattern_entry(std::uint8_t a, int b, int t, int r) {
  return ((b >> (r - 1 - t)) & 1) ? static_cast<std::uint8_t>(1 - a) : a;
}

std::vector<int> fill_active(const std::vector<int>& S, int k, int h) {
  std::vector<int> act(S.begin(), S.end());
  for (int i = 0; i < k && static_cast<int>(act.size()) < h; ++i)
    if (!std::binary_search(S.begin(), S.end(), i)) act.push_back(i);
  std::sort(act.begin(), act.end());
  return act;
}

void push_coordinate(KhOvInstance& out, std::vector<int> act, const std::vector<std::vector<std::uint8_t>>& col) {
  for (int i = 0; i < out.k; ++i)
    for (int v = 0; v < out.size; ++v) out.vectors[i][v].push_back(col[i][v]);
  out.active.push_back(std::move(act));
  ++out.d;
}

// Adds, for every subset S of size r, the 2^r - 1 complement-pattern copies of
// each of the first d0 coordinates; entries outside S are zero.
KhOvInstance add_pattern_blocks(const KhOvInstance& inst, int r) {
  KhOvInstance out = inst;
  const int d0 = inst.d;
  std::vector<std::vector<std::uint8_t>> col(inst.k, std::vector<std::uint8_t>(inst.size, 0));
  for (const auto& sub : subsets_lex(inst.k, r)) {
    const std::vector<int> S(sub.begin(), sub.end());
    const auto act = fill_active(S, inst.k, inst.h);
    for (int b = 1; b < (1 << r); ++b) {
      for (int j = 0; j < d0; ++j) {
        for (auto& c : col) std::fill(c.begin(), c.end(), 0);
        for (int t = 0; t < r; ++t)
          for (int v = 0; v < inst.size; ++v)
            col[S[t]][v] = pattern_entry(inst.vectors[S[t]][v][j], b, t, r);
        push_coordinate(out, act, col);
      }
    }
  }
  return out;
}

KhOvOpt khov_opt(const KhOvInstance& inst, bool maximize) {
  KhOvOpt best;
  bool have = false;
  for_each_tuple(inst.k, inst.size, [&](const std::vector<int>& c) {
    const auto v = khov_product(inst, c);
    if (!have || (maximize ? v > best.value : v < best.value)) {
      best.value = v;
      best.choice = c;
      have = true;
    }
  });
  return best;
}

struct Core {
  std::vector<std::vector<Id>> nbrs;  // X vertex -> sorted Y ids
  std::vector<std::vector<Id>> vertex_of;
  GadgetInventory inv;
};

void require_regular(const KhOvInstance& inst) {
  std::string why;
  if (!inst.check_invariants(&why)) throw InputError("invalid (k,h) instance: " + why);
  if (inst.h < 2) throw InputError("reduction needs h >= 2");
  if (inst.size < 1) throw InputError("reduction needs non-empty families");
  for (int r = 1; r < inst.h; ++r)
    if (!is_r_regular(inst, r))
      throw InputError("instance is not " + std::to_string(r) + "-regular; apply regularize_full first");
}

// The bipartite construction shared by both reductions.  p_size(s, d_prime)
// yields the literal gadget size; it is raised to the exchange bound when smaller.
template <class PSize>
Core build_core(const KhOvInstance& inst, int delta_f, PSize&& p_size) {
  const int k = inst.k, h = inst.h, N = inst.size;
  Core c;
  auto& inv = c.inv;
  inv.x_count = k * N;
  if (delta_f <= 0) delta_f = inv.x_count / 2;
  if (delta_f <= 0) throw InputError("degree parameter must be positive");
  inv.s = inv.x_count / delta_f;
  if (inv.s < 2) throw InputError("degree parameter too large: fewer than two groups per family");
  inv.group_size = (N + inv.s - 1) / inv.s;
  inv.freq_bound = 2 * delta_f + h;
  const int s = inv.s;

  const auto subsets = subsets_lex(k, h);
  std::vector<std::vector<int>> block_coords;
  for (const auto& sub : subsets) {
    block_coords.push_back(inst.coords_with_active_set(std::vector<int>(sub.begin(), sub.end())));
    inv.d_prime = std::max(inv.d_prime, static_cast<int>(block_coords.back().size()));
  }
  const std::int64_t tuples = ipow(s, h);
  const std::int64_t d_count = static_cast<std::int64_t>(subsets.size()) * tuples * inv.d_prime;
  inv.d_blocks = static_cast<int>(subsets.size() * tuples);

  const std::int64_t floor_size = ipow(k, h - 1) * ipow(s, h - 2) * inv.d_prime + 1;
  inv.p_size = std::max<std::int64_t>(p_size(s, inv.d_prime), floor_size);
  inv.p_sets = k * s * (s - 1) / 2;
  inv.y_count = d_count + inv.p_size * inv.p_sets;
  if (inv.y_count > kMaxElements) throw ResourceError("reduction gadgets exceed the element budget");

  auto group = [&](int v) { return v / inv.group_size; };
  c.vertex_of.assign(k, std::vector<Id>(N));
  c.nbrs.resize(inv.x_count);
  for (int i = 0; i < k; ++i) {
    for (int v = 0; v < N; ++v) {
      const Id x = i * N + v;
      c.vertex_of[i][v] = x;
      auto& out = c.nbrs[x];
      for (size_t si = 0; si < subsets.size(); ++si) {
        const auto& S = subsets[si];
        const auto it = std::find(S.begin(), S.end(), i);
        if (it == S.end()) continue;
        const int pos = static_cast<int>(it - S.begin());
        for_each_tuple(h, s, [&](const std::vector<int>& tup) {
          if (tup[pos] != group(v)) return;
          std::int64_t idx = 0;
          for (int g : tup) idx = idx * s + g;
          const std::int64_t base = (static_cast<std::int64_t>(si) * tuples + idx) * inv.d_prime;
          const auto& coords = block_coords[si];
          for (size_t t = 0; t < coords.size(); ++t)
            if (inst.vectors[i][v][coords[t]]) out.push_back(static_cast<Id>(base + t));
        });
      }
      const int per_family = s * (s - 1) / 2;
      int pair = 0;
      for (int j = 0; j < s; ++j) {
        for (int l = j + 1; l < s; ++l, ++pair) {
          if (group(v) != j && group(v) != l) continue;
          const std::int64_t base = d_count + (static_cast<std::int64_t>(i) * per_family + pair) * inv.p_size;
          for (std::int64_t e = 0; e < inv.p_size; ++e) out.push_back(static_cast<Id>(base + e));
        }
      }
      std::sort(out.begin(), out.end());
    }
  }
  return c;
}

std::int64_t literal_p(int k, int base_dim, int multiplier) {
  return static_cast<std::int64_t>(multiplier) * 100 * ipow(k, k) * std::max(base_dim, 1);
}

std::vector<Id> reference_choice(const ReductionOutput& out) {
  std::vector<Id> ref;
  for (int i = 0; i < out.k; ++i) ref.push_back(out.vertex_of[i][0]);
  return ref;
}

}  // namespace

KhOvInstance KhOvInstance::make(int k, int h, std::vector<std::vector<std::vector<std::uint8_t>>> vectors,
                                std::vector<std::vector<int>> active) {
  if (k < 1 || h < 1 || h > k) throw InputError("need 1 <= h <= k");
  if (static_cast<int>(vectors.size()) != k) throw InputError("expected one vector family per index");
  KhOvInstance inst;
  inst.k = k;
  inst.h = h;
  inst.size = static_cast<int>(vectors[0].size());
  inst.d = static_cast<int>(active.size());
  inst.base_dim = inst.d;
  for (auto& a : active) {
    std::sort(a.begin(), a.end());
    if (static_cast<int>(a.size()) != h) throw InputError("every coordinate needs exactly h active indices");
    for (size_t t = 0; t < a.size(); ++t) {
      if (a[t] < 0 || a[t] >= k) throw InputError("active index out of range");
      if (t > 0 && a[t] == a[t - 1]) throw InputError("repeated active index");
    }
  }
  for (auto& fam : vectors) {
    if (static_cast<int>(fam.size()) != inst.size) throw InputError("families differ in size");
    for (auto& v : fam) {
      if (static_cast<int>(v.size()) != inst.d) throw InputError("vector dimension mismatch");
      for (auto& e : v)
        if (e > 1) throw InputError("entries must be 0 or 1");
    }
  }
  inst.vectors = std::move(vectors);
  inst.active = std::move(active);
  for (int j = 0; j < inst.d; ++j)
    for (int i = 0; i < k; ++i)
      if (!inst.is_active(j, i))
        for (auto& v : inst.vectors[i]) v[j] = 0;
  return inst;
}

bool KhOvInstance::is_active(int coord, int family) const {
  return std::binary_search(active[coord].begin(), active[coord].end(), family);
}

std::vector<int> KhOvInstance::coords_with_active_set(const std::vector<int>& S) const {
  std::vector<int> out;
  for (int j = 0; j < d; ++j)
    if (active[j] == S) out.push_back(j);
  return out;
}

bool KhOvInstance::check_invariants(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (k < 1 || h < 1 || h > k) return fail("bad k/h");
  if (static_cast<int>(vectors.size()) != k) return fail("family count");
  if (static_cast<int>(active.size()) != d) return fail("active list length");
  for (const auto& a : active) {
    if (static_cast<int>(a.size()) != h) return fail("active set size");
    for (size_t t = 0; t < a.size(); ++t)
      if (a[t] < 0 || a[t] >= k || (t > 0 && a[t] <= a[t - 1])) return fail("active set not sorted/distinct");
  }
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(vectors[i].size()) != size) return fail("family size");
    for (const auto& v : vectors[i]) {
      if (static_cast<int>(v.size()) != d) return fail("vector dimension");
      for (int j = 0; j < d; ++j)
        if (v[j] > 1 || (v[j] && !is_active(j, i))) return fail("entry outside active families");
    }
  }
  return true;
}

KhOvInstance random_khov(Rng& rng, int k, int h, int size, int d, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<int>> active(d);
  for (auto& a : active) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    a.assign(idx.begin(), idx.begin() + h);
  }
  std::vector<std::vector<std::vector<std::uint8_t>>> vecs(
      k, std::vector<std::vector<std::uint8_t>>(size, std::vector<std::uint8_t>(d, 0)));
  for (auto& fam : vecs)
    for (auto& v : fam)
      for (auto& e : v) e = coin(rng) ? 1 : 0;
  return KhOvInstance::make(k, h, std::move(vecs), std::move(active));
}

std::int64_t tuple_product(const KhOvInstance& inst, const std::vector<int>& families, const std::vector<int>& vecs) {
  // Inactive entries are zero, so an all-ones column already has every family active.
  std::int64_t count = 0;
  for (int j = 0; j < inst.d; ++j) {
    bool all = true;
    for (size_t t = 0; t < families.size() && all; ++t) all = inst.vectors[families[t]][vecs[t]][j] != 0;
    if (all) ++count;
  }
  return count;
}

std::int64_t khov_product(const KhOvInstance& inst, const std::vector<int>& choice) {
  std::int64_t count = 0;
  for (int j = 0; j < inst.d; ++j) {
    bool all = true;
    for (int i : inst.active[j]) all = all && inst.vectors[i][choice[i]][j] != 0;
    if (all) ++count;
  }
  return count;
}

KhOvOpt khov_opt_max(const KhOvInstance& inst) { return khov_opt(inst, true); }
KhOvOpt khov_opt_min(const KhOvInstance& inst) { return khov_opt(inst, false); }

bool is_r_regular(const KhOvInstance& inst, int r) {
  bool have = false, ok = true;
  std::int64_t value = 0;
  for (const auto& sub : subsets_lex(inst.k, r)) {
    const std::vector<int> fams(sub.begin(), sub.end());
    for_each_tuple(r, inst.size, [&](const std::vector<int>& vecs) {
      if (!ok) return;
      const auto p = tuple_product(inst, fams, vecs);
      if (!have) {
        value = p;
        have = true;
      } else if (p != value) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool products_preserved(const KhOvInstance& a, const KhOvInstance& b, int lo, int hi) {
  if (a.k != b.k || a.size != b.size) return false;
  for (int s = lo; s <= hi; ++s) {
    for (const auto& sub : subsets_lex(a.k, s)) {
      const std::vector<int> fams(sub.begin(), sub.end());
      bool ok = true;
      for_each_tuple(s, a.size, [&](const std::vector<int>& vecs) {
        if (ok && tuple_product(a, fams, vecs) != tuple_product(b, fams, vecs)) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

KhOvInstance regularize_r(const KhOvInstance& inst, int r) {
  if (r < 1 || r >= inst.h) throw InputError("regularize_r needs 1 <= r < h");
  return add_pattern_blocks(inst, r);
}

KhOvInstance regularize_full(const KhOvInstance& inst) {
  KhOvInstance out = inst;
  for (int r = inst.h - 1; r >= 1; --r) out = add_pattern_blocks(out, r);
  return out;
}

std::pair<KhOvInstance, std::int64_t> ov_to_maxip(const KhOvInstance& inst) {
  const int d0 = inst.d;
  KhOvInstance out = add_pattern_blocks(inst, inst.h);
  for (auto& fam : out.vectors)
    for (auto& v : fam) std::fill(v.begin(), v.begin() + d0, 0);
  return {std::move(out), static_cast<std::int64_t>(binom(inst.k, inst.h)) * d0};
}

ReductionOutput reduce_to_cover(const KhOvInstance& inst, const ReductionParams& params) {
  require_regular(inst);
  if (params.multiplier < 1) throw InputError("gadget multiplier must be at least 1");
  if (params.delta_s > 0 && params.u > 0 && params.delta_s > params.u) throw InputError("need delta_s <= u");
  if (params.delta_f > 0 && params.n > 0 && params.delta_f > params.n) throw InputError("need delta_f <= n");
  const int k = inst.k, h = inst.h;
  Core c = build_core(inst, params.delta_f, [&](int s, int) {
    return literal_p(k, inst.base_dim, params.multiplier) * ipow(s, h - 2);
  });

  ReductionOutput out;
  out.kind = "cover";
  out.k = k;
  out.h = h;
  out.sign = (h % 2 == 1) ? 1 : -1;
  out.vertex_of = std::move(c.vertex_of);
  out.inventory = c.inv;
  auto sets = std::move(c.nbrs);
  std::int64_t u = out.inventory.y_count;
  if (params.u > u) u = params.u;
  const std::int64_t pad_sets = std::max(0, params.n - static_cast<int>(sets.size()));
  sets.resize(sets.size() + pad_sets);
  out.inventory.padding = (u - out.inventory.y_count) + pad_sets;
  out.cover = CoverInstance::from_sets(static_cast<int>(u), sets);

  const auto ref = reference_choice(out);
  const std::vector<int> zero(k, 0);
  out.t = coverage_value(out.cover, ref) - out.sign * khov_product(inst, zero);
  return out;
}

ReductionOutput reduce_to_pds(const KhOvInstance& inst, const ReductionParams& params) {
  require_regular(inst);
  if (params.multiplier < 1) throw InputError("gadget multiplier must be at least 1");
  const int k = inst.k, h = inst.h;
  int delta = params.delta_f;
  if (delta <= 0) delta = k * inst.size / 2;
  Core c = build_core(inst, delta, [&](int s, int) {
    const std::int64_t spread = std::max<std::int64_t>(ipow(s, h - 2), (delta + s - 1) / s);
    return literal_p(k, inst.base_dim, params.multiplier) * spread;
  });

  ReductionOutput out;
  out.kind = "pds";
  out.k = k;
  out.h = h;
  out.sign = (h % 2 == 1) ? 1 : -1;
  out.vertex_of = std::move(c.vertex_of);
  out.inventory = c.inv;
  const std::int64_t x_count = out.inventory.x_count;
  std::int64_t n = x_count + out.inventory.y_count;
  if (params.n > n) {
    out.inventory.padding = params.n - n;
    n = params.n;
  }
  if (n > kMaxElements) throw ResourceError("reduction graph exceeds the vertex budget");
  std::vector<std::pair<Id, Id>> edges;
  for (Id x = 0; x < x_count; ++x)
    for (Id y : c.nbrs[x]) edges.emplace_back(x, static_cast<Id>(x_count + y));
  out.graph = PdsGraph::from_edges(static_cast<int>(n), edges);

  const auto ref = reference_choice(out);
  const std::vector<int> zero(k, 0);
  out.t = closed_coverage(out.graph, ref) - out.sign * khov_product(inst, zero);
  return out;
}

ReductionOutput reduce_to_pds_sparse(const KhOvInstance& inst, std::int64_t m, int n, int multiplier) {
  const int k = inst.k, h = inst.h;
  if (m < 1) throw InputError("edge parameter must be positive");
  // Family size may not exceed m^(h/(2h-1)).
  const long double lm = std::log(static_cast<long double>(m));
  if (std::log(static_cast<long double>(std::max(inst.size, 1))) * (2 * h - 1) > lm * h + 1e-9L)
    throw InputError("family size exceeds m^(h/(2h-1))");
  // Largest delta with delta^(2h-1) <= m^(h-1).
  int delta = static_cast<int>(std::floor(std::exp(lm * (h - 1) / (2 * h - 1)) + 1e-9L));
  auto pow_le = [&](std::int64_t x) {
    return std::log(static_cast<long double>(x)) * (2 * h - 1) <= lm * (h - 1) + 1e-12L;
  };
  while (delta > 1 && !pow_le(delta)) --delta;
  while (pow_le(delta + 1)) ++delta;
  delta = std::max(delta, 1);

  ReductionParams params;
  params.n = n;
  params.delta_f = delta;
  params.multiplier = multiplier;
  ReductionOutput out = reduce_to_pds(inst, params);
  const std::int64_t lit = literal_p(k, inst.base_dim, multiplier);
  const std::int64_t two_h = ipow(2, h - 1);
  const std::int64_t c = lit * (two_h * ipow(k, h) + k + 2 * k * k) +
                         2 * two_h * ipow(k, 2 * h - 1) * std::max(out.inventory.d_prime, 1) + 2 * k * k;
  out.inventory.edge_bound = c * m;
  return out;
}

ReductionCheck verify_reduction(const KhOvInstance& inst, const ReductionOutput& out) {
  ReductionCheck chk;
  const CoverInstance lift = out.kind == "pds" ? pds_to_cover(out.graph) : out.cover;
  const auto search = exhaustive_bounded(lift, out.k, 4096);
  chk.graph_opt = search.value;
  chk.truncated = search.truncated;
  chk.khov_best = out.sign > 0 ? khov_opt_max(inst).value : khov_opt_min(inst).value;
  chk.equivalence = chk.graph_opt == out.threshold(chk.khov_best);

  std::vector<int> family_of(lift.n(), -1);
  for (int i = 0; i < out.k; ++i)
    for (Id x : out.vertex_of[i]) family_of[x] = i;
  chk.confined = true;
  for (const auto& opt : search.optima) {
    std::vector<int> seen(out.k, 0);
    for (Id x : opt)
      if (family_of[x] >= 0) ++seen[family_of[x]];
    for (int cnt : seen) chk.confined = chk.confined && cnt == 1;
  }

  const size_t words = (static_cast<size_t>(lift.u()) + 63) / 64;
  std::vector<std::vector<std::vector<std::uint64_t>>> bits(out.k);
  for (int i = 0; i < out.k; ++i)
    for (Id x : out.vertex_of[i]) {
      std::vector<std::uint64_t> b(words, 0);
      for (Id y : lift.set(x)) b[y >> 6] |= std::uint64_t{1} << (y & 63);
      bits[i].push_back(std::move(b));
    }
  chk.per_choice = true;
  std::vector<std::uint64_t> acc(words);
  for_each_tuple(out.k, inst.size, [&](const std::vector<int>& choice) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int i = 0; i < out.k; ++i)
      for (size_t w = 0; w < words; ++w) acc[w] |= bits[i][choice[i]][w];
    std::int64_t cov = 0;
    for (auto w : acc) cov += std::popcount(w);
    if (cov != out.threshold(khov_product(inst, choice))) chk.per_choice = false;
  });
  return chk;
}

bool check_two_family_identity(const KhOvInstance& inst, const ReductionOutput& out) {
  if (inst.k != 2 || inst.h != 2) throw InputError("identity applies to k = h = 2");
  const auto& inv = out.inventory;
  const std::int64_t d_count = static_cast<std::int64_t>(inv.d_blocks) * inv.d_prime;
  const std::int64_t shift = out.kind == "pds" ? inv.x_count : 0;
  auto d_part = [&](Id x) {
    std::vector<Id> s;
    auto add = [&](Id y) {
      if (y >= shift && y < shift + d_count) s.push_back(y);
    };
    if (out.kind == "pds")
      for (Id y : out.graph.neighbors(x)) add(y);
    else
      for (Id y : out.cover.set(x)) add(y);
    return s;
  };
  for (int v1 = 0; v1 < inst.size; ++v1) {
    for (int v2 = 0; v2 < inst.size; ++v2) {
      const auto a = d_part(out.vertex_of[0][v1]);
      const auto b = d_part(out.vertex_of[1][v2]);
      const auto uni = static_cast<std::int64_t>(sorted_union(a, b).size());
      const auto n1 = tuple_product(inst, {0}, {v1});
      const auto n2 = tuple_product(inst, {1}, {v2});
      const auto ip = tuple_product(inst, {0, 1}, {v1, v2});
      if (uni != n1 * inv.s + n2 * inv.s - ip) return false;
    }
  }
  return true;
}

PartiteHypergraph random_partite_hypergraph(Rng& rng, int parts, int part_size, int h, double p) {
  std::bernoulli_distribution coin(p);
  PartiteHypergraph g;
  g.parts = parts;
  g.part_size = part_size;
  g.h = h;
  for (const auto& blocks : subsets_lex(parts, h))
    for_each_tuple(h, part_size, [&](const std::vector<int>& idx) {
      if (!coin(rng)) return;
      std::vector<Id> e;
      for (int t = 0; t < h; ++t) e.push_back(blocks[t] * part_size + idx[t]);
      g.edges.push_back(std::move(e));
    });
  return g;
}

namespace {

std::set<std::vector<Id>> validated_edges(const PartiteHypergraph& g) {
  if (g.parts < 1 || g.part_size < 1 || g.h < 1 || g.h > g.parts) throw InputError("malformed partite hypergraph");
  std::set<std::vector<Id>> es;
  for (auto e : g.edges) {
    if (static_cast<int>(e.size()) != g.h) throw InputError("hyperedge of wrong arity");
    std::sort(e.begin(), e.end());
    for (size_t t = 0; t < e.size(); ++t) {
      if (e[t] < 0 || e[t] >= g.parts * g.part_size) throw InputError("hyperedge vertex out of range");
      if (t > 0 && e[t] / g.part_size == e[t - 1] / g.part_size)
        throw InputError("hyperedge meets a part twice");
    }
    es.insert(std::move(e));
  }
  return es;
}

}  // namespace

bool has_hyperclique(const PartiteHypergraph& g) {
  const auto es = validated_edges(g);
  bool found = false;
  const auto blocks = subsets_lex(g.parts, g.h);
  for_each_tuple(g.parts, g.part_size, [&](const std::vector<int>& pick) {
    if (found) return;
    for (const auto& b : blocks) {
      std::vector<Id> e;
      for (Id p : b) e.push_back(p * g.part_size + pick[p]);
      if (!es.count(e)) return;
    }
    found = true;
  });
  return found;
}

KhOvInstance hyperclique_to_khov(const PartiteHypergraph& g, int q) {
  const auto es = validated_edges(g);
  if (q < 1 || g.parts % q != 0) throw InputError("part count must be a multiple of q");
  const int k = g.parts / q, h = g.h, ps = g.part_size;
  if (h > k) throw InputError("need h <= k for active index sets");

  // Family i holds every q-tuple over its blocks q*i .. q*i+q-1.
  std::vector<std::vector<std::vector<Id>>> tuples(k);
  for (int i = 0; i < k; ++i)
    for_each_tuple(q, ps, [&](const std::vector<int>& idx) {
      std::vector<Id> t;
      for (int b = 0; b < q; ++b) t.push_back((q * i + b) * ps + idx[b]);
      tuples[i].push_back(std::move(t));
    });
  const int size = static_cast<int>(tuples[0].size());

  std::vector<std::vector<int>> active;
  std::vector<std::vector<std::vector<std::uint8_t>>> vecs(k, std::vector<std::vector<std::uint8_t>>(size));
  for (const auto& blocks : subsets_lex(g.parts, h))
    for_each_tuple(h, ps, [&](const std::vector<int>& idx) {
      std::vector<Id> e;
      for (int t = 0; t < h; ++t) e.push_back(blocks[t] * ps + idx[t]);
      if (es.count(e)) return;
      std::vector<int> touched;
      for (Id b : blocks)
        if (touched.empty() || touched.back() != b / q) touched.push_back(b / q);
      const auto act = fill_active(touched, k, h);
      for (int i = 0; i < k; ++i) {
        const bool is_touched = std::binary_search(touched.begin(), touched.end(), i);
        const bool is_act = std::binary_search(act.begin(), act.end(), i);
        for (int v = 0; v < size; ++v) {
          std::uint8_t entry = 0;
          if (is_touched) {
            // Maximal overlap means holding every vertex of e inside this family.
            entry = 1;
            for (Id x : e)
              if (x / ps / q == i && tuples[i][v][x / ps - q * i] != x) entry = 0;
          } else if (is_act) {
            entry = 1;
          }
          vecs[i][v].push_back(entry);
        }
      }
      active.push_back(act);
    });
  return KhOvInstance::make(k, h, std::move(vecs), std::move(active));
}

}  // namespace mkc
