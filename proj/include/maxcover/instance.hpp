#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mkc {

using Id = std::int32_t;

// Set system over a universe [0,u): candidate sets X on one side, elements Y
// on the other.  Both directions are stored as CSR with strictly sorted rows.
class CoverInstance {
 public:
  CoverInstance() = default;

  // Sorts every set; throws InputError on out-of-range or repeated elements.
  static CoverInstance from_sets(int u, const std::vector<std::vector<Id>>& sets);
  // CSR form; rows must already be strictly sorted.
  static CoverInstance from_csr(int u, std::vector<std::int64_t> offsets, std::vector<Id> data);

  int n() const { return n_; }
  int u() const { return u_; }
  int max_set_size() const { return max_set_; }
  int max_frequency() const { return max_freq_; }
  std::int64_t m() const { return m_; }

  std::span<const Id> set(Id i) const {
    return {set_data_.data() + set_off_[i], static_cast<size_t>(set_off_[i + 1] - set_off_[i])};
  }
  std::span<const Id> owners(Id y) const {
    return {own_data_.data() + own_off_[y], static_cast<size_t>(own_off_[y + 1] - own_off_[y])};
  }
  int degree(Id i) const { return static_cast<int>(set_off_[i + 1] - set_off_[i]); }
  int frequency(Id y) const { return static_cast<int>(own_off_[y + 1] - own_off_[y]); }

  std::vector<std::vector<Id>> sets_as_lists() const;

  // Recomputes every derived field and the transpose; false (with reason) on mismatch.
  bool check_invariants(std::string* why = nullptr) const;

  friend bool operator==(const CoverInstance& a, const CoverInstance& b) {
    return a.u_ == b.u_ && a.set_off_ == b.set_off_ && a.set_data_ == b.set_data_;
  }

 private:
  void build_transpose();

  int n_ = 0;
  int u_ = 0;
  int max_set_ = 0;
  int max_freq_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> set_off_{0};
  std::vector<Id> set_data_;
  std::vector<std::int64_t> own_off_{0};
  std::vector<Id> own_data_;
};

// Simple undirected graph, symmetric sorted adjacency.
class PdsGraph {
 public:
  PdsGraph() = default;

  // Duplicate edges collapse; self-loops and bad ids throw InputError.
  static PdsGraph from_edges(int n, const std::vector<std::pair<Id, Id>>& edges);

  int n() const { return n_; }
  std::int64_t m() const { return m_; }
  int max_degree() const { return max_deg_; }
  int degree(Id v) const { return static_cast<int>(off_[v + 1] - off_[v]); }
  std::span<const Id> neighbors(Id v) const {
    return {adj_.data() + off_[v], static_cast<size_t>(off_[v + 1] - off_[v])};
  }
  bool adjacent(Id a, Id b) const;
  std::vector<std::pair<Id, Id>> edge_list() const;  // u < v, sorted

  bool check_invariants(std::string* why = nullptr) const;

  friend bool operator==(const PdsGraph& a, const PdsGraph& b) {
    return a.n_ == b.n_ && a.off_ == b.off_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  std::int64_t m_ = 0;
  int max_deg_ = 0;
  std::vector<std::int64_t> off_{0};
  std::vector<Id> adj_;
};

struct SolveStats {
  std::uint64_t unions = 0;
  std::uint64_t triangles = 0;
  std::uint64_t bundles = 0;
  std::uint64_t ops = 0;
  int depth = 0;
  std::string regime;

  void absorb(const SolveStats& o) {
    unions += o.unions;
    triangles += o.triangles;
    bundles += o.bundles;
    ops += o.ops;
    if (o.depth > depth) depth = o.depth;
  }
};

struct SolveResult {
  std::int64_t value = 0;
  std::vector<Id> witness;  // sorted
  SolveStats stats;
};

// Stamp-based membership mask; reusable without clearing.
class CoverageScratch {
 public:
  explicit CoverageScratch(int u = 0) : mark_(u, 0) {}
  void ensure(int u) {
    if (static_cast<int>(mark_.size()) < u) mark_.resize(u, 0);
  }
  void next() {
    if (++epoch_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
  }
  bool test_and_set(Id y) {
    if (mark_[y] == epoch_) return false;
    mark_[y] = epoch_;
    return true;
  }
  bool test(Id y) const { return mark_[y] == epoch_; }

 private:
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
};

std::int64_t coverage_value(const CoverInstance& inst, std::span<const Id> S);
std::int64_t coverage_value(const CoverInstance& inst, std::span<const Id> S, CoverageScratch& scratch);

// |N[v1] u ... u N[vk]| in g.
std::int64_t closed_coverage(const PdsGraph& g, std::span<const Id> S);

CoverInstance pds_to_cover(const PdsGraph& g);

// Keeps the min(k*Δf*Δs, n) highest-degree sets (ties: smaller id first).
// Retained sets keep their relative id order; origin[i] is the input id of set i.
CoverInstance prune_candidates(const CoverInstance& inst, int k, std::vector<Id>* origin = nullptr);

struct DegreeProfile {
  int max_set_size = 0;
  int max_frequency = 0;
  std::int64_t m = 0;
};
DegreeProfile degree_profile(const CoverInstance& inst);

// Set ids ordered by degree descending, id ascending.
std::vector<Id> degree_order(const CoverInstance& inst);

// Sub-instance on the listed sets (in that order) with the universe ids kept;
// elements flagged in `removed` are dropped from every set.
CoverInstance restrict_instance(const CoverInstance& inst, std::span<const Id> keep,
                                const std::vector<char>* removed = nullptr);

}  // namespace mkc
