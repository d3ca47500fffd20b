#include "maxcover/sparse_pds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"

namespace mkc {

namespace {

std::int64_t closed_deg(const PdsGraph& g, Id v) { return g.degree(v) + 1; }

// Keeps the larger value; ties go to the lexicographically smaller witness.
void keep_best(SolveResult& best, std::int64_t value, std::vector<Id> witness) {
  std::sort(witness.begin(), witness.end());
  if (value > best.value || (value == best.value && witness < best.witness)) {
    best.value = value;
    best.witness = std::move(witness);
  }
}

// Handles k <= 1 and k >= n only.
SolveResult tiny_graph(const PdsGraph& g, int k) {
  SolveResult r;
  k = std::min(k, g.n());
  if (k <= 0) return r;
  if (k == g.n()) {
    r.witness.resize(g.n());
    std::iota(r.witness.begin(), r.witness.end(), 0);
    r.value = g.n();
    return r;
  }
  // k == 1: a maximum closed degree vertex.
  Id best = 0;
  for (Id v = 1; v < g.n(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  r.value = closed_deg(g, best);
  r.witness = {best};
  return r;
}

std::vector<Id> by_degree(const PdsGraph& g) {
  std::vector<Id> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Id a, Id b) { return g.degree(a) > g.degree(b); });
  return order;
}

}  // namespace

PdsGraph delete_vertices(const PdsGraph& g, const std::vector<char>& gone, std::vector<Id>* origin) {
  std::vector<Id> remap(g.n(), -1);
  std::vector<Id> keep;
  for (Id v = 0; v < g.n(); ++v)
    if (!gone[v]) {
      remap[v] = static_cast<Id>(keep.size());
      keep.push_back(v);
    }
  std::vector<std::pair<Id, Id>> edges;
  for (auto [a, b] : g.edge_list())
    if (remap[a] >= 0 && remap[b] >= 0) edges.emplace_back(remap[a], remap[b]);
  if (origin) *origin = keep;
  return PdsGraph::from_edges(static_cast<int>(keep.size()), edges);
}

SolveResult pds2_table(const PdsGraph& g) {
  const int n = g.n();
  if (n <= 2) {
    SolveResult r = tiny_graph(g, 2);
    r.stats.ops = n + 2 * g.m();
    r.stats.regime = "pds2-table";
    return r;
  }
  const std::int64_t delta1 = g.max_degree() + 1;
  const int hs = static_cast<int>(std::min<std::int64_t>(2 * delta1 * delta1, n));
  std::vector<Id> order = by_degree(g);
  order.resize(hs);
  std::vector<int> pos(n, -1);
  for (int a = 0; a < hs; ++a) pos[order[a]] = a;

  std::uint64_t ops = static_cast<std::uint64_t>(n) + 2 * static_cast<std::uint64_t>(g.m());
  std::vector<std::int32_t> T(static_cast<size_t>(hs) * hs, 0);
  for (int a = 0; a < hs; ++a)
    for (int b = a + 1; b < hs; ++b) T[static_cast<size_t>(a) * hs + b] = closed_deg(g, order[a]) + closed_deg(g, order[b]);
  ops += static_cast<std::uint64_t>(hs) * (hs - 1) / 2;

  // Every common closed neighbor y of x and x' is met once along x -> y -> x'.
  for (int a = 0; a < hs; ++a) {
    const Id x = order[a];
    auto visit_y = [&](Id y) {
      auto dec = [&](Id xp) {
        ++ops;
        const int b = pos[xp];
        if (b > a) --T[static_cast<size_t>(a) * hs + b];
        else if (b >= 0 && b < a) --T[static_cast<size_t>(b) * hs + a];
      };
      dec(y);
      for (Id xp : g.neighbors(y)) dec(xp);
    };
    visit_y(x);
    for (Id y : g.neighbors(x)) visit_y(y);
  }
  // Each unordered pair was decremented from both ends.
  SolveResult best;
  best.value = -1;
  for (int a = 0; a < hs; ++a)
    for (int b = a + 1; b < hs; ++b) {
      const std::int64_t common2 = closed_deg(g, order[a]) + closed_deg(g, order[b]) - T[static_cast<size_t>(a) * hs + b];
      const std::int64_t v = closed_deg(g, order[a]) + closed_deg(g, order[b]) - common2 / 2;
      keep_best(best, v, {order[a], order[b]});
    }
  best.stats.ops = ops;
  best.stats.unions = static_cast<std::uint64_t>(hs) * (hs - 1) / 2;
  best.stats.regime = "pds2-table";
  return best;
}

SolveResult pds2_heavy(const PdsGraph& g, int d, SolveStats* stats) {
  SolveResult best;
  best.stats.regime = "pds2-heavy";
  std::vector<Id> rows;
  for (Id v = 0; v < g.n(); ++v)
    if (g.degree(v) >= d) rows.push_back(v);
  if (rows.size() < 2) return best;
  const int R = static_cast<int>(rows.size());
  std::vector<int> row_of(g.n(), -1);
  for (int i = 0; i < R; ++i) row_of[rows[i]] = i;

  std::vector<Id> heavy_cols;
  std::vector<int> col_of(g.n(), -1);
  for (Id w = 0; w < g.n(); ++w)
    if (g.degree(w) >= d) {
      col_of[w] = static_cast<int>(heavy_cols.size());
      heavy_cols.push_back(w);
    }
  const int H = static_cast<int>(heavy_cols.size());
  CountMatrix A(R, H), At(H, R);
  for (int i = 0; i < R; ++i)
    for (Id w : g.neighbors(rows[i]))
      if (col_of[w] >= 0) {
        A.at(i, col_of[w]) = 1;
        At.at(col_of[w], i) = 1;
      }
  CountMatrix B = matrix_multiply(A, At);
  std::uint64_t ops = static_cast<std::uint64_t>(R) * H * R;
  // Light columns: walk 2-paths i - w - j through each low-degree w.
  std::vector<int> nb;
  for (Id w = 0; w < g.n(); ++w) {
    if (g.degree(w) >= d) continue;
    nb.clear();
    for (Id v : g.neighbors(w))
      if (row_of[v] >= 0) nb.push_back(row_of[v]);
    for (int a : nb)
      for (int b : nb) {
        ++ops;
        if (a != b) ++B.at(a, b);
      }
  }
  best.value = -1;
  for (int i = 0; i < R; ++i)
    for (int j = i + 1; j < R; ++j) {
      const Id x = rows[i], y = rows[j];
      const std::int64_t common = B.at(i, j) + (g.adjacent(x, y) ? 2 : 0);
      keep_best(best, closed_deg(g, x) + closed_deg(g, y) - common, {x, y});
    }
  best.stats.ops = ops;
  if (stats) stats->ops += ops;
  return best;
}

std::int64_t LayerContext::pair_value(const PdsGraph& g, Id x, Id y) const {
  const auto k = pair_key(x, y);
  auto s = C_S.find(k);
  auto r = C_R.find(k);
  return closed_deg(g, x) + r_count[y] + (s == C_S.end() ? 0 : s->second) - (r == C_R.end() ? 0 : r->second);
}

LayerContext build_layer_context(const PdsGraph& g, int d) {
  const int delta = g.max_degree();
  if (d < 1 || 4LL * d > delta)
    throw InputError("pds2_light_layer: need 1 <= d and 4d <= max degree (d=" + std::to_string(d) +
                     ", max degree=" + std::to_string(delta) + ")");
  LayerContext c;
  c.d = d;
  const int n = g.n();
  c.apex = 0;
  for (Id v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(c.apex)) c.apex = v;
  c.in_S.assign(n, 0);
  c.in_S[c.apex] = 1;
  for (Id v : g.neighbors(c.apex)) c.in_S[v] = 1;
  c.r_count.assign(n, 0);
  for (Id v = 0; v < n; ++v) {
    int r = c.in_S[v] ? 0 : 1;
    for (Id w : g.neighbors(v)) r += c.in_S[w] ? 0 : 1;
    c.r_count[v] = r;
  }
  c.ops += n + 2 * static_cast<std::uint64_t>(g.m());

  // Some v reaches 2d+1 vertices of R, so N[apex] u N[v] already beats every pair touching V_d.
  for (Id v = 0; v < n; ++v)
    if (c.r_count[v] >= 2 * d + 1) {
      c.early_exit = "apex-pair-wins";
      return c;
    }
  for (Id v = 0; v < n; ++v) {
    if (g.degree(v) >= d && g.degree(v) < 2 * d) c.Vd.push_back(v);
    if (g.degree(v) >= delta - 2 * d) c.Hd.push_back(v);
  }
  // An H_d vertex missing 4d+1 vertices of S has 2d+1 in R: same early exit.
  for (Id v : c.Hd) {
    const int in_s = static_cast<int>(closed_deg(g, v)) - c.r_count[v];
    if (delta + 1 - in_s >= 4 * d + 1) {
      c.early_exit = "heavy-vertex-misses-s";
      return c;
    }
  }
  std::vector<char> in_vd(n, 0);
  for (Id y : c.Vd) in_vd[y] = 1;
  std::vector<Id> S_list;
  for (Id v = 0; v < n; ++v)
    if (c.in_S[v]) S_list.push_back(v);
  std::vector<char> mark(n, 0);
  for (Id x : c.Hd) {
    mark[x] = 1;
    for (Id w : g.neighbors(x)) mark[w] = 1;
    auto bump = [&](std::unordered_map<std::uint64_t, int>& table, Id via) {
      if (in_vd[via]) ++table[pair_key(x, via)];
      for (Id y : g.neighbors(via)) {
        ++c.ops;
        if (in_vd[y]) ++table[pair_key(x, y)];
      }
    };
    for (Id s : S_list)
      if (!mark[s]) bump(c.C_S, s);
    auto through_r = [&](Id r) {
      if (!c.in_S[r]) bump(c.C_R, r);
    };
    through_r(x);
    for (Id w : g.neighbors(x)) through_r(w);
    mark[x] = 0;
    for (Id w : g.neighbors(x)) mark[w] = 0;
  }
  return c;
}

std::optional<SolveResult> pds2_light_layer(const PdsGraph& g, int d, SolveStats* stats) {
  const LayerContext c = build_layer_context(g, d);
  std::uint64_t ops = c.ops;
  auto done = [&](std::optional<SolveResult> r) {
    if (stats) stats->ops += ops;
    if (r) r->stats.ops = ops;
    return r;
  };
  if (!c.early_exit.empty() || c.Vd.empty() || c.Hd.empty()) return done(std::nullopt);

  const int delta = g.max_degree();
  // Pairs in non-increasing |N[x]| + |N[y] n R|, cut off after c*m*d of them.
  std::map<int, std::vector<Id>, std::greater<>> h_by_deg;
  for (Id x : c.Hd) h_by_deg[static_cast<int>(closed_deg(g, x))].push_back(x);
  std::vector<std::vector<Id>> v_by_q(2 * d + 1);
  for (Id y : c.Vd) v_by_q[c.r_count[y]].push_back(y);
  const std::uint64_t md = static_cast<std::uint64_t>(std::max<std::int64_t>(g.m(), 1)) * d;
  const std::uint64_t filled = c.C_S.size() + c.C_R.size();
  const std::uint64_t cmult = filled / md + 1;
  const std::uint64_t total = static_cast<std::uint64_t>(c.Hd.size()) * c.Vd.size();
  const std::uint64_t limit = std::min(total, cmult * md);

  SolveResult best;
  best.value = -1;
  std::uint64_t count = 0;
  for (int sum = delta + 1 + 2 * d; sum >= 0 && count < limit; --sum) {
    for (int q = 0; q <= 2 * d && count < limit; ++q) {
      auto it = h_by_deg.find(sum - q);
      if (it == h_by_deg.end()) continue;
      for (Id y : v_by_q[q]) {
        for (Id x : it->second) {
          if (count >= limit) break;
          ++count;
          ++ops;
          const auto key = pair_key(x, y);
          if (c.C_S.count(key)) continue;
          auto r = c.C_R.find(key);
          keep_best(best, closed_deg(g, x) + q - (r == c.C_R.end() ? 0 : r->second), {x, y});
        }
      }
    }
  }
  for (const auto& [key, v] : c.C_S) {
    ++ops;
    const Id x = static_cast<Id>(key >> 32), y = static_cast<Id>(key & 0xffffffffu);
    keep_best(best, c.pair_value(g, x, y), {x, y});
  }
  // Below Δ+1 the apex alone wins, so no optimum meets V_d.
  if (best.value < delta + 1) return done(std::nullopt);
  best.stats.regime = "pds2-light";
  return done(best);
}

SolveResult pds2_sparse(const PdsGraph& g, double omega) {
  const int n = g.n();
  const int delta = g.max_degree();
  if (n <= 2) {
    SolveResult r = tiny_graph(g, 2);
    r.stats.regime = "pds2-sparse";
    return r;
  }
  if (delta == 0) {
    SolveResult r;
    r.value = 2;
    r.witness = {0, 1};
    r.stats.regime = "pds2-sparse";
    return r;
  }
  const double gamma = std::pow(static_cast<double>(g.m()), (omega - 1.0) / (omega + 1.0));
  int pow2 = 1;
  while (pow2 * 4 <= delta) pow2 *= 2;  // smallest power of two above Δ/4
  const int dh = std::max(1, std::min(static_cast<int>(std::ceil(gamma)), pow2));

  SolveStats st;
  SolveResult best = pds2_heavy(g, dh, &st);
  if (best.witness.empty()) best.value = -1;
  for (int d = 1; d < dh; d *= 2) {
    auto layer = pds2_light_layer(g, d, &st);
    if (layer) keep_best(best, layer->value, layer->witness);
  }
  // Isolated vertices sit in no layer; pair the apex with the first one.
  Id apex = 0;
  for (Id v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(apex)) apex = v;
  for (Id v = 0; v < n; ++v)
    if (g.degree(v) == 0) {
      keep_best(best, closed_deg(g, apex) + 1, {apex, v});
      break;
    }
  best.stats = st;
  best.stats.regime = "pds2-sparse";
  return best;
}

std::optional<SolveResult> edge_solution_scan(const PdsGraph& g, int k, std::int64_t budget) {
  if (k < 3) throw InputError("edge_solution_scan: k must be at least 3");
  const int n = g.n();
  if (g.m() == 0) return std::nullopt;
  if (k >= n) {
    SolveResult r = tiny_graph(g, n);
    r.stats.regime = "edge-scan";
    return r;
  }
  const int a = (k - 2) / 2 + 2;
  const int b = (k - 1) / 2;  // ceil((k-2)/2)
  const long double rows_est = binom(n, a), cols_est = binom(n, b);
  const long double cost = rows_est * n + cols_est * n + rows_est * cols_est;
  if (cost > static_cast<long double>(budget))
    throw ResourceError("edge_solution_scan: " + std::to_string(static_cast<long long>(cost)) +
                        " entries exceed budget " + std::to_string(budget));

  std::vector<std::vector<Id>> row_sets;
  for_each_subset_lex(n, a, [&](const std::vector<Id>& s) {
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        if (g.adjacent(s[i], s[j])) {
          row_sets.push_back(s);
          return;
        }
  });
  const std::vector<std::vector<Id>> col_sets = subsets_lex(n, b);
  auto undominated = [&](const std::vector<Id>& s, auto&& put) {
    std::vector<char> dom(n, 0);
    for (Id v : s) {
      dom[v] = 1;
      for (Id w : g.neighbors(v)) dom[w] = 1;
    }
    for (Id y = 0; y < n; ++y) put(y, dom[y] ? 0 : 1);
  };
  const int R = static_cast<int>(row_sets.size()), C = static_cast<int>(col_sets.size());
  CountMatrix A(R, n), B(n, C);
  for (int r = 0; r < R; ++r) undominated(row_sets[r], [&](Id y, int v) { A.at(r, y) = v; });
  for (int c = 0; c < C; ++c) undominated(col_sets[c], [&](Id y, int v) { B.at(y, c) = v; });
  const CountMatrix M = matrix_multiply(A, B);
  int br = 0, bc = 0;
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c)
      if (M.at(r, c) < M.at(br, bc)) {
        br = r;
        bc = c;
      }
  SolveResult res;
  res.value = n - M.at(br, bc);
  std::vector<Id> w = sorted_union(row_sets[br], col_sets[bc]);
  for (Id x = 0; static_cast<int>(w.size()) < k && x < n; ++x)
    if (!std::binary_search(w.begin(), w.end(), x)) w.insert(std::upper_bound(w.begin(), w.end(), x), x);
  res.witness = std::move(w);
  res.stats.ops = static_cast<std::uint64_t>(R) * n * C;
  res.stats.unions = static_cast<std::uint64_t>(R) * C;
  res.stats.regime = "edge-scan";
  return res;
}

SolveResult independent_partial_ds(const PdsGraph& g, int k, const SolverOptions& opt) {
  k = std::min(std::max(k, 0), g.n());
  if (k <= 1 || k == g.n()) {
    SolveResult r = tiny_graph(g, k);
    r.stats.regime = "independent";
    return r;
  }
  if (k == 2) {
    SolveResult r = mm_baseline(pds_to_cover(g), 2, opt.budget);
    r.stats.regime = "independent";
    return r;
  }
  const std::int64_t d1 = g.max_degree() + 1;
  std::vector<Id> H1, H2;
  for (Id v = 0; v < g.n(); ++v) {
    if (closed_deg(g, v) * k >= d1) H1.push_back(v);
    if (closed_deg(g, v) * 2 * k >= d1) H2.push_back(v);
  }
  const bool sparse_enough = g.max_degree() < std::pow(static_cast<double>(g.m()), 0.4);
  const bool many_h1 = static_cast<std::int64_t>(H1.size()) >= 2LL * k * k * d1;
  SolveResult best;
  best.stats.regime = "independent";
  if (sparse_enough && many_h1) {
    // All optimal vertices have closed degree >= (Δ+1)/(2k).
    std::vector<std::vector<Id>> sets;
    for (Id v : H2) {
      std::vector<Id> s(g.neighbors(v).begin(), g.neighbors(v).end());
      s.insert(std::upper_bound(s.begin(), s.end(), v), v);
      sets.push_back(std::move(s));
    }
    std::vector<Id> origin;
    const CoverInstance pruned = prune_candidates(CoverInstance::from_sets(g.n(), sets), k, &origin);
    SolveResult r = partial_ds_core(pruned, k, opt);
    best.value = r.value;
    for (Id x : r.witness) best.witness.push_back(H2[origin[x]]);
    std::sort(best.witness.begin(), best.witness.end());
    best.stats.absorb(r.stats);
    return best;
  }
  best.value = -1;
  for (Id x : H1) {
    std::vector<char> gone(g.n(), 0);
    gone[x] = 1;
    for (Id w : g.neighbors(x)) gone[w] = 1;
    std::vector<Id> origin;
    const PdsGraph rest = delete_vertices(g, gone, &origin);
    SolveResult sub = independent_partial_ds(rest, k - 1, opt);
    std::vector<Id> w = {x};
    for (Id v : sub.witness) w.push_back(origin[v]);
    best.stats.absorb(sub.stats);
    best.stats.depth = std::max(best.stats.depth, sub.stats.depth + 1);
    keep_best(best, closed_deg(g, x) + sub.value, std::move(w));
  }
  return best;
}

SolveResult pds_sparse(const PdsGraph& g, int k, const SolverOptions& opt) {
  k = std::min(std::max(k, 0), g.n());
  if (k <= 1) {
    SolveResult r = tiny_graph(g, k);
    r.stats.regime = "pds-sparse";
    return r;
  }
  if (k == 2) return pds2_sparse(g, opt.omega);
  SolveResult best = independent_partial_ds(g, k, opt);
  if (auto e = edge_solution_scan(g, k, opt.budget)) {
    best.stats.absorb(e->stats);
    keep_best(best, e->value, e->witness);
  }
  best.stats.regime = "pds-sparse";
  return best;
}

}  // namespace mkc
