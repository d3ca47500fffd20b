#include "maxcover/instance.hpp"

#include <algorithm>
#include <numeric>

#include "maxcover/errors.hpp"

namespace mkc {

CoverInstance CoverInstance::from_sets(int u, const std::vector<std::vector<Id>>& sets) {
  if (u < 0) throw InputError("negative universe size");
  std::vector<std::int64_t> off{0};
  std::vector<Id> data;
  off.reserve(sets.size() + 1);
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<Id> s = sets[i];
    std::sort(s.begin(), s.end());
    for (size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 0 || s[j] >= u)
        throw InputError("set " + std::to_string(i) + ": element " + std::to_string(s[j]) + " out of range");
      if (j > 0 && s[j] == s[j - 1])
        throw InputError("set " + std::to_string(i) + ": duplicate element " + std::to_string(s[j]));
    }
    data.insert(data.end(), s.begin(), s.end());
    off.push_back(static_cast<std::int64_t>(data.size()));
  }
  return from_csr(u, std::move(off), std::move(data));
}

CoverInstance CoverInstance::from_csr(int u, std::vector<std::int64_t> offsets, std::vector<Id> data) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != static_cast<std::int64_t>(data.size()))
    throw InputError("malformed CSR offsets");
  CoverInstance inst;
  inst.u_ = u;
  inst.n_ = static_cast<int>(offsets.size()) - 1;
  inst.set_off_ = std::move(offsets);
  inst.set_data_ = std::move(data);
  inst.m_ = static_cast<std::int64_t>(inst.set_data_.size());
  for (int i = 0; i < inst.n_; ++i) {
    auto s = inst.set(i);
    for (size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 0 || s[j] >= u) throw InputError("element id out of range");
      if (j > 0 && s[j] <= s[j - 1]) throw InputError("set rows must be strictly sorted");
    }
    inst.max_set_ = std::max(inst.max_set_, static_cast<int>(s.size()));
  }
  inst.build_transpose();
  return inst;
}

void CoverInstance::build_transpose() {
  std::vector<std::int64_t> cnt(u_ + 1, 0);
  for (Id y : set_data_) ++cnt[y + 1];
  for (int y = 0; y < u_; ++y) cnt[y + 1] += cnt[y];
  own_off_ = cnt;
  own_data_.assign(set_data_.size(), 0);
  std::vector<std::int64_t> pos(cnt.begin(), cnt.end() - 1);
  for (int i = 0; i < n_; ++i)
    for (Id y : set(i)) own_data_[pos[y]++] = i;
  max_freq_ = 0;
  for (int y = 0; y < u_; ++y) max_freq_ = std::max(max_freq_, frequency(y));
}

std::vector<std::vector<Id>> CoverInstance::sets_as_lists() const {
  std::vector<std::vector<Id>> out(n_);
  for (int i = 0; i < n_; ++i) out[i].assign(set(i).begin(), set(i).end());
  return out;
}

bool CoverInstance::check_invariants(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int ms = 0;
  for (int i = 0; i < n_; ++i) {
    auto s = set(i);
    for (size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 0 || s[j] >= u_) return fail("element out of range");
      if (j > 0 && s[j] <= s[j - 1]) return fail("set not strictly sorted");
    }
    ms = std::max(ms, static_cast<int>(s.size()));
  }
  if (ms != max_set_) return fail("stored max set size differs from recomputed");
  std::vector<std::vector<Id>> own(u_);
  for (int i = 0; i < n_; ++i)
    for (Id y : set(i)) own[y].push_back(i);
  int mf = 0;
  for (int y = 0; y < u_; ++y) {
    auto o = owners(y);
    if (!std::equal(o.begin(), o.end(), own[y].begin(), own[y].end())) return fail("owner lists are not the transpose");
    mf = std::max(mf, static_cast<int>(o.size()));
  }
  if (mf != max_freq_) return fail("stored max frequency differs from recomputed");
  if (m_ != static_cast<std::int64_t>(set_data_.size())) return fail("edge count mismatch");
  return true;
}

PdsGraph PdsGraph::from_edges(int n, const std::vector<std::pair<Id, Id>>& edges) {
  if (n < 0) throw InputError("negative vertex count");
  std::vector<std::pair<Id, Id>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("edge " + std::to_string(a) + " " + std::to_string(b) + " out of range");
    if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  PdsGraph g;
  g.n_ = n;
  g.off_.assign(n + 1, 0);
  for (auto [a, b] : arcs) ++g.off_[a + 1];
  for (int v = 0; v < n; ++v) g.off_[v + 1] += g.off_[v];
  g.adj_.reserve(arcs.size());
  for (auto [a, b] : arcs) g.adj_.push_back(b);
  g.m_ = static_cast<std::int64_t>(arcs.size() / 2);
  for (int v = 0; v < n; ++v) g.max_deg_ = std::max(g.max_deg_, g.degree(v));
  return g;
}

bool PdsGraph::adjacent(Id a, Id b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::pair<Id, Id>> PdsGraph::edge_list() const {
  std::vector<std::pair<Id, Id>> out;
  for (int v = 0; v < n_; ++v)
    for (Id w : neighbors(v))
      if (v < w) out.emplace_back(v, w);
  return out;
}

bool PdsGraph::check_invariants(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int md = 0;
  std::int64_t arcs = 0;
  for (int v = 0; v < n_; ++v) {
    auto nb = neighbors(v);
    for (size_t j = 0; j < nb.size(); ++j) {
      if (nb[j] == v) return fail("self-loop");
      if (j > 0 && nb[j] <= nb[j - 1]) return fail("adjacency not strictly sorted");
      if (!adjacent(nb[j], v)) return fail("asymmetric adjacency");
    }
    md = std::max(md, static_cast<int>(nb.size()));
    arcs += static_cast<std::int64_t>(nb.size());
  }
  if (md != max_deg_) return fail("stored max degree differs from recomputed");
  if (arcs != 2 * m_) return fail("edge count mismatch");
  return true;
}

std::int64_t coverage_value(const CoverInstance& inst, std::span<const Id> S) {
  CoverageScratch scratch(inst.u());
  return coverage_value(inst, S, scratch);
}

std::int64_t coverage_value(const CoverInstance& inst, std::span<const Id> S, CoverageScratch& scratch) {
  for (Id i : S)
    if (i < 0 || i >= inst.n()) throw InputError("set id " + std::to_string(i) + " out of range");
  scratch.ensure(inst.u());
  scratch.next();
  std::int64_t cnt = 0;
  for (Id i : S)
    for (Id y : inst.set(i)) cnt += scratch.test_and_set(y);
  return cnt;
}

std::int64_t closed_coverage(const PdsGraph& g, std::span<const Id> S) {
  std::vector<char> seen(g.n(), 0);
  std::int64_t cnt = 0;
  for (Id v : S) {
    if (v < 0 || v >= g.n()) throw InputError("vertex id out of range");
    if (!seen[v]) seen[v] = 1, ++cnt;
    for (Id w : g.neighbors(v))
      if (!seen[w]) seen[w] = 1, ++cnt;
  }
  return cnt;
}

CoverInstance pds_to_cover(const PdsGraph& g) {
  std::vector<std::int64_t> off{0};
  std::vector<Id> data;
  off.reserve(g.n() + 1);
  data.reserve(static_cast<size_t>(2 * g.m() + g.n()));
  for (int v = 0; v < g.n(); ++v) {
    auto nb = g.neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    data.insert(data.end(), nb.begin(), it);
    data.push_back(v);
    data.insert(data.end(), it, nb.end());
    off.push_back(static_cast<std::int64_t>(data.size()));
  }
  return CoverInstance::from_csr(g.n(), std::move(off), std::move(data));
}

std::vector<Id> degree_order(const CoverInstance& inst) {
  std::vector<Id> ids(inst.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](Id a, Id b) { return inst.degree(a) > inst.degree(b); });
  return ids;
}

CoverInstance prune_candidates(const CoverInstance& inst, int k, std::vector<Id>* origin) {
  const std::int64_t bound = static_cast<std::int64_t>(std::max(k, 0)) * inst.max_frequency() * inst.max_set_size();
  const int keep = static_cast<int>(std::min<std::int64_t>(bound, inst.n()));
  if (keep == inst.n()) {
    if (origin) {
      origin->resize(inst.n());
      std::iota(origin->begin(), origin->end(), 0);
    }
    return inst;
  }
  std::vector<Id> order = degree_order(inst);
  order.resize(keep);
  std::sort(order.begin(), order.end());
  if (origin) *origin = order;
  return restrict_instance(inst, order);
}

DegreeProfile degree_profile(const CoverInstance& inst) {
  DegreeProfile p;
  for (int i = 0; i < inst.n(); ++i) {
    p.max_set_size = std::max(p.max_set_size, inst.degree(i));
    p.m += inst.degree(i);
  }
  for (int y = 0; y < inst.u(); ++y) p.max_frequency = std::max(p.max_frequency, inst.frequency(y));
  return p;
}

CoverInstance restrict_instance(const CoverInstance& inst, std::span<const Id> keep, const std::vector<char>* removed) {
  std::vector<std::int64_t> off{0};
  std::vector<Id> data;
  off.reserve(keep.size() + 1);
  for (Id i : keep) {
    for (Id y : inst.set(i))
      if (!removed || !(*removed)[y]) data.push_back(y);
    off.push_back(static_cast<std::int64_t>(data.size()));
  }
  return CoverInstance::from_csr(inst.u(), std::move(off), std::move(data));
}

}  // namespace mkc
