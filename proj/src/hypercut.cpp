#include "maxcover/hypercut.hpp"

#include <algorithm>
#include <map>

#include "maxcover/errors.hpp"

namespace mkc {

namespace {

void check_id(const CoverInstance& inst, Id x) {
  if (x < 0 || x >= inst.n()) throw InputError("candidate id out of range: " + std::to_string(x));
}

// One round of extensions: every bundle in `level` grown by one hyperedge
// whose two new vertices lie in `allowed` (empty = everything).
std::vector<Bundle> extend_level(const CoverInstance& inst, const std::vector<Bundle>& level,
                                 const std::vector<char>& allowed, SolveStats* stats) {
  std::map<std::vector<Id>, Bundle> next;
  std::vector<char> in_b(inst.n(), 0);
  std::uint64_t ops = 0;
  for (const Bundle& b : level) {
    for (Id v : b.vertices) in_b[v] = 1;
    for (Id base : b.vertices) {
      for (Id y : inst.set(base)) {
        auto own = inst.owners(y);
        for (size_t i = 0; i < own.size(); ++i) {
          for (size_t j = i + 1; j < own.size(); ++j) {
            ++ops;
            const Id x1 = own[i], x2 = own[j];
            if (in_b[x1] || in_b[x2]) continue;
            if (!allowed.empty() && (!allowed[x1] || !allowed[x2])) continue;
            std::vector<Id> verts = b.vertices;
            verts.insert(std::upper_bound(verts.begin(), verts.end(), x1), x1);
            verts.insert(std::upper_bound(verts.begin(), verts.end(), x2), x2);
            auto it = next.find(verts);
            if (it != next.end()) continue;
            Bundle nb;
            nb.vertices = verts;
            nb.order = b.order + 1;
            nb.root = b.root;
            nb.witness = b.witness;
            nb.witness.push_back({base, x1, x2});
            next.emplace(std::move(verts), std::move(nb));
          }
        }
      }
    }
    for (Id v : b.vertices) in_b[v] = 0;
  }
  if (stats) stats->ops += ops;
  std::vector<Bundle> out;
  out.reserve(next.size());
  for (auto& [k, v] : next) out.push_back(std::move(v));
  return out;
}

std::vector<Bundle> singletons(const CoverInstance& inst, const std::vector<char>& allowed) {
  std::vector<Bundle> out;
  for (Id x = 0; x < inst.n(); ++x) {
    if (!allowed.empty() && !allowed[x]) continue;
    Bundle b;
    b.vertices = {x};
    b.root = x;
    out.push_back(std::move(b));
  }
  return out;
}

// Grows a bundle from `root` inside `avail` until no extension exists.
Bundle grow_maximal(const CoverInstance& inst, Id root, const std::vector<char>& avail) {
  Bundle b;
  b.vertices = {root};
  b.root = root;
  std::vector<char> in_b(inst.n(), 0);
  in_b[root] = 1;
  std::vector<Id> insertion = {root};
  bool grown = true;
  while (grown) {
    grown = false;
    for (size_t bi = 0; bi < insertion.size() && !grown; ++bi) {
      const Id base = insertion[bi];
      for (Id y : inst.set(base)) {
        auto own = inst.owners(y);
        for (size_t i = 0; i < own.size() && !grown; ++i) {
          const Id x1 = own[i];
          if (in_b[x1] || !avail[x1]) continue;
          for (size_t j = i + 1; j < own.size(); ++j) {
            const Id x2 = own[j];
            if (in_b[x2] || !avail[x2]) continue;
            in_b[x1] = in_b[x2] = 1;
            insertion.push_back(x1);
            insertion.push_back(x2);
            b.witness.push_back({base, x1, x2});
            ++b.order;
            grown = true;
            break;
          }
        }
        if (grown) break;
      }
    }
  }
  b.vertices = insertion;
  std::sort(b.vertices.begin(), b.vertices.end());
  return b;
}

// Keeps the first `steps` witness steps of b.
Bundle prefix_bundle(const Bundle& b, int steps) {
  Bundle p;
  p.root = b.root;
  p.order = steps;
  p.vertices = {b.root};
  for (int s = 0; s < steps; ++s) {
    p.witness.push_back(b.witness[s]);
    p.vertices.push_back(b.witness[s][1]);
    p.vertices.push_back(b.witness[s][2]);
  }
  std::sort(p.vertices.begin(), p.vertices.end());
  return p;
}

// Moves `want` vertices of b into a part: the whole bundle when want == |b|,
// otherwise the last want/2 extension pairs (want is even).  Returns the
// leftover prefix, which is itself a bundle (or empty).
Bundle peel(const Bundle& b, int want, std::vector<Id>& part) {
  const int size = static_cast<int>(b.vertices.size());
  if (want == size) {
    part.insert(part.end(), b.vertices.begin(), b.vertices.end());
    return Bundle{};
  }
  if (want % 2 != 0 || want > size - 1) throw InvariantError("peel: unreachable size " + std::to_string(want));
  const int keep = b.order - want / 2;
  for (int s = b.order - 1; s >= keep; --s) {
    part.push_back(b.witness[s][1]);
    part.push_back(b.witness[s][2]);
  }
  return prefix_bundle(b, keep);
}

}  // namespace

std::optional<Id> is_hyperedge(const CoverInstance& inst, Id x1, Id x2, Id x3) {
  check_id(inst, x1);
  check_id(inst, x2);
  check_id(inst, x3);
  if (x1 == x2 || x1 == x3 || x2 == x3) throw InputError("is_hyperedge: ids must be distinct");
  auto a = inst.set(x1), b = inst.set(x2), c = inst.set(x3);
  size_t i = 0, j = 0, l = 0;
  while (i < a.size() && j < b.size() && l < c.size()) {
    const Id m = std::max({a[i], b[j], c[l]});
    if (a[i] == m && b[j] == m && c[l] == m) return m;
    if (a[i] < m) ++i;
    if (j < b.size() && b[j] < m) ++j;
    if (l < c.size() && c[l] < m) ++l;
  }
  return std::nullopt;
}

std::vector<Hyperedge> list_hyperedges(const CoverInstance& inst) {
  std::vector<Hyperedge> all;
  for (Id y = 0; y < inst.u(); ++y) {
    auto own = inst.owners(y);
    for (size_t i = 0; i < own.size(); ++i)
      for (size_t j = i + 1; j < own.size(); ++j)
        for (size_t l = j + 1; l < own.size(); ++l) all.push_back({{own[i], own[j], own[l]}, y});
  }
  // Stable sort keeps the first (smallest) witness for each triple.
  std::stable_sort(all.begin(), all.end(), [](const Hyperedge& a, const Hyperedge& b) { return a.v < b.v; });
  all.erase(std::unique(all.begin(), all.end(), [](const Hyperedge& a, const Hyperedge& b) { return a.v == b.v; }),
            all.end());
  return all;
}

std::vector<Bundle> enumerate_bundles(const CoverInstance& inst, int c, SolveStats* stats) {
  if (c < 0) throw InputError("enumerate_bundles: c must be non-negative");
  const std::vector<char> none;
  std::vector<Bundle> level = singletons(inst, none);
  for (int step = 0; step < c && !level.empty(); ++step) level = extend_level(inst, level, none, stats);
  if (stats) stats->bundles += level.size();
  return level;
}

bool bundle_is_valid(const CoverInstance& inst, const Bundle& b) {
  if (static_cast<int>(b.witness.size()) != b.order) return false;
  if (static_cast<int>(b.vertices.size()) != 1 + 2 * b.order) return false;
  std::vector<Id> cur = {b.root};
  for (const auto& [base, x, y] : b.witness) {
    if (std::find(cur.begin(), cur.end(), base) == cur.end()) return false;
    if (std::find(cur.begin(), cur.end(), x) != cur.end()) return false;
    if (std::find(cur.begin(), cur.end(), y) != cur.end()) return false;
    if (x == y || !is_hyperedge(inst, base, x, y)) return false;
    cur.push_back(x);
    cur.push_back(y);
  }
  std::sort(cur.begin(), cur.end());
  return cur == b.vertices;
}

std::vector<std::vector<Id>> maximal_bundles(const CoverInstance& inst, const std::vector<Id>& domain) {
  std::vector<char> allowed;
  if (!domain.empty()) {
    allowed.assign(inst.n(), 0);
    for (Id x : domain) {
      check_id(inst, x);
      allowed[x] = 1;
    }
  }
  std::vector<std::vector<Id>> out;
  std::vector<Bundle> level = singletons(inst, allowed);
  while (!level.empty()) {
    std::vector<Bundle> next = extend_level(inst, level, allowed, nullptr);
    // A bundle is maximal when none of its extensions exist; extensions of b
    // are exactly the next-level bundles built from b, so test directly.
    std::vector<char> in_b(inst.n(), 0);
    for (const Bundle& b : level) {
      for (Id v : b.vertices) in_b[v] = 1;
      bool extendable = false;
      for (Id base : b.vertices) {
        for (Id y : inst.set(base)) {
          int free_owners = 0;
          for (Id x : inst.owners(y))
            if (!in_b[x] && (allowed.empty() || allowed[x])) ++free_owners;
          if (free_owners >= 2) {
            extendable = true;
            break;
          }
        }
        if (extendable) break;
      }
      for (Id v : b.vertices) in_b[v] = 0;
      if (!extendable) out.push_back(b.vertices);
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_arity_reducing_hypercut(const CoverInstance& inst, const std::vector<Id>& S1, const std::vector<Id>& S2,
                                const std::vector<Id>& S3) {
  std::vector<signed char> part(inst.n(), -1);
  const std::array<const std::vector<Id>*, 3> parts = {&S1, &S2, &S3};
  for (int p = 0; p < 3; ++p)
    for (Id x : *parts[p]) {
      check_id(inst, x);
      if (part[x] != -1) throw InputError("is_arity_reducing_hypercut: parts overlap at " + std::to_string(x));
      part[x] = static_cast<signed char>(p);
    }
  int smallest = 0;
  for (int p = 1; p < 3; ++p)
    if (parts[p]->size() < parts[smallest]->size()) smallest = p;
  for (Id x : *parts[smallest]) {
    for (Id y : inst.set(x)) {
      int mask = 0;
      for (Id o : inst.owners(y))
        if (part[o] >= 0) mask |= 1 << part[o];
      if (mask == 7) return false;
    }
  }
  return true;
}

TwoBundleDecomposition check_two_bundle_decomposition(const CoverInstance& inst, const std::vector<Id>& S) {
  std::vector<Id> rest = S;
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  for (Id x : rest) check_id(inst, x);

  // Greedy maximal bundles inside S: no hyperedge meets three of them.
  std::vector<char> avail(inst.n(), 0);
  for (Id x : rest) avail[x] = 1;
  std::vector<Bundle> bundles;
  for (Id x : rest) {
    if (!avail[x]) continue;
    Bundle b = grow_maximal(inst, x, avail);
    for (Id v : b.vertices) avail[v] = 0;
    bundles.push_back(std::move(b));
  }
  std::stable_sort(bundles.begin(), bundles.end(),
                   [](const Bundle& a, const Bundle& b) { return a.vertices.size() < b.vertices.size(); });

  TwoBundleDecomposition out;
  std::array<std::vector<Id>, 3> parts;
  const size_t l = bundles.size();
  for (size_t i = 0; i + 2 < l; ++i) {
    int smallest = 0;
    for (int p = 1; p < 3; ++p)
      if (parts[p].size() < parts[smallest].size()) smallest = p;
    parts[smallest].insert(parts[smallest].end(), bundles[i].vertices.begin(), bundles[i].vertices.end());
  }
  if (l >= 2) {
    // Top up the two smaller parts to the largest one (or one below it).
    std::array<int, 3> idx = {0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return parts[a].size() > parts[b].size(); });
    const int top = static_cast<int>(parts[idx[0]].size());
    const std::array<const Bundle*, 2> big = {&bundles[l - 2], &bundles[l - 1]};
    std::array<Bundle, 2> left;
    for (int t = 0; t < 2; ++t) {
      std::vector<Id>& target = parts[idx[t + 1]];
      const int gap = top - static_cast<int>(target.size());
      const int size = static_cast<int>(big[t]->vertices.size());
      int want = gap == size ? gap : (gap % 2 == 0 ? gap : gap - 1);
      if (want > size) throw InvariantError("two-bundle decomposition: gap exceeds bundle size");
      left[t] = peel(*big[t], want, target);
    }
    out.D1 = std::move(left[0]);
    out.D2 = std::move(left[1]);
  } else if (l == 1) {
    out.D1 = bundles[0];
  }
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  out.parts = std::move(parts);

  const int kp = static_cast<int>(out.parts[0].size() + out.parts[1].size() + out.parts[2].size());
  const bool balanced = static_cast<int>(out.parts[0].size()) == (kp + 2) / 3 &&
                        static_cast<int>(out.parts[1].size()) == (kp + 1) / 3 &&
                        static_cast<int>(out.parts[2].size()) == kp / 3;
  if (!balanced) throw InvariantError("two-bundle decomposition: parts are not balanced");
  for (const Bundle* d : {&out.D1, &out.D2})
    if (!d->vertices.empty() && !bundle_is_valid(inst, *d))
      throw InvariantError("two-bundle decomposition: removed set is not a bundle");
  if (!is_arity_reducing_hypercut(inst, out.parts[0], out.parts[1], out.parts[2]))
    throw InvariantError("two-bundle decomposition: a hyperedge crosses the cut");
  size_t total = kp + out.D1.vertices.size() + out.D2.vertices.size();
  if (total != rest.size()) throw InvariantError("two-bundle decomposition: lost vertices");
  return out;
}

}  // namespace mkc
