#include "maxcover/triangle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "maxcover/combinatorics.hpp"
#include "maxcover/errors.hpp"

namespace mkc {

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();

int pair_slot(int p, int q) { return p == 0 ? q - 1 : 2; }

struct Best {
  std::int64_t w = kNone;
  std::array<size_t, 3> key{};
};

inline bool improves(std::int64_t w, const std::array<size_t, 3>& key, const Best& b) {
#ifdef MKC_MUTATE_TRIANGLE_TIEBREAK
  return w > b.w || key < b.key;
#else
  return w > b.w || (w == b.w && key < b.key);
#endif
}

struct ScanOrder {
  std::array<std::vector<size_t>, 3> order;  // node indices by weight desc, index asc
  std::array<std::int64_t, 3> top{};
};

ScanOrder make_order(const SuperNodeGraph& g) {
  ScanOrder s;
  for (int p = 0; p < 3; ++p) {
    auto& o = s.order[p];
    o.resize(g.parts[p].size());
    std::iota(o.begin(), o.end(), size_t{0});
    const auto& w = g.node_w[p];
    std::stable_sort(o.begin(), o.end(), [&](size_t a, size_t b) { return w[a] > w[b]; });
    s.top[p] = o.empty() ? 0 : w[o.front()];
  }
  return s;
}

// Scans every triangle whose first node is order[0][pos], pruning with the
// node-weight bound (edge weights are never positive).
void scan_root(const SuperNodeGraph& g, const ScanOrder& s, size_t pos, Best& best, std::uint64_t& scanned) {
  const size_t i = s.order[0][pos];
  const std::int64_t wi = g.node_w[0][i];
  if (best.w != kNone && wi + s.top[1] + s.top[2] < best.w) return;
  for (size_t j : s.order[1]) {
    const std::int64_t wij = wi + g.node_w[1][j];
    if (best.w != kNone && wij + s.top[2] < best.w) break;
    const std::int64_t pij = wij + g.edge(0, 1, i, j);
    if (best.w != kNone && pij + s.top[2] < best.w) continue;
    for (size_t l : s.order[2]) {
      const std::int64_t wl = g.node_w[2][l];
      if (best.w != kNone && pij + wl < best.w) break;
      ++scanned;
      const std::int64_t w = pij + wl + g.edge(0, 2, i, l) + g.edge(1, 2, j, l);
      const std::array<size_t, 3> key = {i, j, l};
      if (improves(w, key, best)) {
        best.w = w;
        best.key = key;
      }
    }
  }
}

TriangleResult finish(const SuperNodeGraph& g, const Best& b) {
  TriangleResult r;
  if (b.w == kNone) return r;
  r.weight = b.w;
  r.index = b.key;
  for (int p = 0; p < 3; ++p) r.nodes[p] = g.parts[p][b.key[p]];
  return r;
}

}  // namespace

std::int64_t SuperNodeGraph::edge(int p, int q, size_t i, size_t j) const {
  return edge_w[pair_slot(p, q)][i * parts[q].size() + j];
}

std::int64_t SuperNodeGraph::triangle_weight(size_t i, size_t j, size_t l) const {
  return node_w[0][i] + node_w[1][j] + node_w[2][l] + edge(0, 1, i, j) + edge(0, 2, i, l) + edge(1, 2, j, l);
}

std::array<int, 3> balanced_sizes(int k) { return {(k + 2) / 3, (k + 1) / 3, k / 3}; }

std::vector<Id> TriangleResult::members() const {
  std::vector<Id> out;
  for (const auto& n : nodes) out.insert(out.end(), n.begin(), n.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SuperNodeGraph build_tripartite(const CoverInstance& inst, const std::vector<Id>& xs, const std::vector<char>& y_mask,
                                int k, std::int64_t budget) {
  if (k < 1) throw InputError("build_tripartite: k must be positive");
  SuperNodeGraph g;
  g.k = k;
  g.part_size = balanced_sizes(k);
  const int nx = static_cast<int>(xs.size());

  long double cost = 0;
  std::array<std::uint64_t, 3> cnt{};
  for (int p = 0; p < 3; ++p) cnt[p] = g.part_size[p] == 0 ? 1 : binom(nx, g.part_size[p]);
  const int nwords = (inst.u() + 63) / 64;
  for (int p = 0; p < 3; ++p) cost += static_cast<long double>(cnt[p]) * (nwords + 1);
  cost += static_cast<long double>(cnt[0]) * cnt[1] + static_cast<long double>(cnt[0]) * cnt[2] +
          static_cast<long double>(cnt[1]) * cnt[2];
  if (cost > static_cast<long double>(budget))
    throw ResourceError("build_tripartite: " + std::to_string(static_cast<long long>(cost)) +
                        " entries exceed budget " + std::to_string(budget));

  // Bitset of N(node) restricted to Y' for every super node.
  std::array<std::vector<std::uint64_t>, 3> bits;
  for (int p = 0; p < 3; ++p) {
    auto& nodes = g.parts[p];
    if (g.part_size[p] == 0) {
      nodes.push_back({});
    } else {
      for_each_subset_lex(nx, g.part_size[p], [&](const std::vector<Id>& pos) {
        std::vector<Id> ids(pos.size());
        for (size_t t = 0; t < pos.size(); ++t) ids[t] = xs[pos[t]];
        std::sort(ids.begin(), ids.end());
        nodes.push_back(std::move(ids));
      });
    }
    bits[p].assign(nodes.size() * nwords, 0);
    g.node_w[p].assign(nodes.size(), 0);
    for (size_t a = 0; a < nodes.size(); ++a) {
      std::uint64_t* row = bits[p].data() + a * nwords;
      for (Id x : nodes[a])
        for (Id y : inst.set(x))
          if (y_mask.empty() || y_mask[y]) row[y >> 6] |= std::uint64_t{1} << (y & 63);
      std::int64_t w = 0;
      for (int t = 0; t < nwords; ++t) w += std::popcount(row[t]);
      g.node_w[p][a] = w;
    }
  }
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (int s = 0; s < 3; ++s) {
    const auto [p, q] = pairs[s];
    const size_t np = g.parts[p].size(), nq = g.parts[q].size();
    auto& ew = g.edge_w[s];
    ew.assign(np * nq, 0);
#pragma omp parallel for schedule(static)
    for (long long a = 0; a < static_cast<long long>(np); ++a) {
      const std::uint64_t* ra = bits[p].data() + a * nwords;
      for (size_t b = 0; b < nq; ++b) {
        const std::uint64_t* rb = bits[q].data() + b * nwords;
        std::int64_t c = 0;
        for (int t = 0; t < nwords; ++t) c += std::popcount(ra[t] & rb[t]);
        ew[a * nq + b] = -c;
      }
    }
  }
  return g;
}

TriangleResult max_weight_triangle_serial(const SuperNodeGraph& g, SolveStats* stats) {
  const ScanOrder s = make_order(g);
  Best best;
  std::uint64_t scanned = 0;
  for (size_t pos = 0; pos < s.order[0].size(); ++pos) scan_root(g, s, pos, best, scanned);
  if (stats) stats->triangles += scanned;
  return finish(g, best);
}

TriangleResult max_weight_triangle(const SuperNodeGraph& g, SolveStats* stats) {
  const ScanOrder s = make_order(g);
  Best best;
  std::uint64_t scanned = 0;
  const long long roots = static_cast<long long>(s.order[0].size());
#pragma omp parallel
  {
    Best local;
    std::uint64_t local_scanned = 0;
#pragma omp for schedule(dynamic, 4) nowait
    for (long long pos = 0; pos < roots; ++pos) scan_root(g, s, static_cast<size_t>(pos), local, local_scanned);
#pragma omp critical(mkc_triangle_merge)
    {
      scanned += local_scanned;
      if (local.w != kNone && improves(local.w, local.key, best)) best = local;
    }
  }
  if (stats) stats->triangles += scanned;
  return finish(g, best);
}

TriangleResult max_weight_triangle_exhaustive(const SuperNodeGraph& g) {
  Best best;
  for (size_t i = 0; i < g.parts[0].size(); ++i)
    for (size_t j = 0; j < g.parts[1].size(); ++j)
      for (size_t l = 0; l < g.parts[2].size(); ++l) {
        const std::int64_t w = g.triangle_weight(i, j, l);
        if (best.w == kNone || w > best.w) best = {w, {i, j, l}};
      }
  return finish(g, best);
}

}  // namespace mkc
