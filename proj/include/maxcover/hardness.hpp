#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxcover/instance.hpp"
#include "maxcover/random.hpp"

namespace mkc {

// k families of `size` binary vectors each; every coordinate carries exactly h
// distinct active family indices.  Entries of inactive families are stored as 0.
struct KhOvInstance {
  int k = 0;
  int h = 0;
  int size = 0;      // vectors per family
  int d = 0;         // current dimension
  int base_dim = 0;  // dimension before any regularization gadget
  std::vector<std::vector<std::vector<std::uint8_t>>> vectors;  // [family][index][coord]
  std::vector<std::vector<int>> active;                         // [coord], sorted

  // Validates shape and active sets, zeroes inactive entries; InputError on bad shape.
  static KhOvInstance make(int k, int h, std::vector<std::vector<std::vector<std::uint8_t>>> vectors,
                           std::vector<std::vector<int>> active);

  bool is_active(int coord, int family) const;
  // a(S): coordinates whose active set is exactly S (S sorted, |S| == h).
  std::vector<int> coords_with_active_set(const std::vector<int>& S) const;
  bool check_invariants(std::string* why = nullptr) const;
};

KhOvInstance random_khov(Rng& rng, int k, int h, int size, int d, double p);

// Coordinates whose active set contains every listed family and where every
// chosen vector has a 1.  families sorted and distinct; vecs[t] indexes families[t].
std::int64_t tuple_product(const KhOvInstance& inst, const std::vector<int>& families,
                           const std::vector<int>& vecs);

// Sum over h-subsets of the tuple products; choice holds one index per family.
std::int64_t khov_product(const KhOvInstance& inst, const std::vector<int>& choice);

struct KhOvOpt {
  std::int64_t value = 0;
  std::vector<int> choice;  // lexicographically first optimum
};
KhOvOpt khov_opt_max(const KhOvInstance& inst);
KhOvOpt khov_opt_min(const KhOvInstance& inst);

// Every r-tuple over distinct families has the same product (exhaustive).
bool is_r_regular(const KhOvInstance& inst, int r);

// Every s-tuple product with lo <= s <= hi agrees between a and b (same shape of families).
bool products_preserved(const KhOvInstance& a, const KhOvInstance& b, int lo, int hi);

// Complement-pattern blocks for every r-subset; requires 1 <= r < h.
KhOvInstance regularize_r(const KhOvInstance& inst, int r);
// regularize_r for r = h-1 down to 1.
KhOvInstance regularize_full(const KhOvInstance& inst);

// Returns the lifted instance and t: an orthogonal choice exists iff the
// maximum product of the lifted instance is at least t.
std::pair<KhOvInstance, std::int64_t> ov_to_maxip(const KhOvInstance& inst);

struct ReductionParams {
  int n = 0;        // minimum candidate count (cover) or vertex count (pds); 0 = natural
  int u = 0;        // minimum universe size (cover only); 0 = natural
  int delta_s = 0;  // cover only, sanity-checked against u
  int delta_f = 0;  // 0 = floor(k*size/2), giving two groups per family
  int multiplier = 1;
};

struct GadgetInventory {
  int s = 0;                 // groups per family
  int group_size = 0;
  int d_prime = 0;           // slots per D-block
  int d_blocks = 0;
  int p_sets = 0;
  std::int64_t p_size = 0;   // elements per P-set
  int x_count = 0;
  std::int64_t y_count = 0;
  std::int64_t padding = 0;  // isolated elements / empty sets / isolated vertices
  int freq_bound = 0;        // 2*delta_f + h
  std::int64_t edge_bound = 0;  // sparse variant only
};

struct ReductionOutput {
  std::string kind;  // "cover" or "pds"
  int k = 0;
  int h = 0;
  int sign = 1;      // +1: maxIP (h odd), -1: minIP (h even)
  std::int64_t t = 0;
  CoverInstance cover;
  PdsGraph graph;
  std::vector<std::vector<Id>> vertex_of;  // [family][index] -> set id or vertex id
  GadgetInventory inventory;

  // Graph value reached iff the product condition holds at alpha.
  std::int64_t threshold(std::int64_t alpha) const { return t + sign * alpha; }
};

// inst must be r-regular for every r < h (InputError otherwise).
ReductionOutput reduce_to_cover(const KhOvInstance& inst, const ReductionParams& params = {});
// Monochromatic variant; params.delta_f is used as the degree parameter.
ReductionOutput reduce_to_pds(const KhOvInstance& inst, const ReductionParams& params = {});
// Degree parameter floor(m^((h-1)/(2h-1))); records an edge bound c*m*d.
ReductionOutput reduce_to_pds_sparse(const KhOvInstance& inst, std::int64_t m, int n = 0, int multiplier = 1);

struct ReductionCheck {
  std::int64_t graph_opt = 0;
  std::int64_t khov_best = 0;  // max (sign +1) or min (sign -1) product
  bool equivalence = false;    // graph_opt == threshold(khov_best)
  bool per_choice = false;     // every one-per-family choice obeys value == threshold(product)
  bool confined = false;       // every optimum takes one X vertex per family
  bool truncated = false;      // optimum list hit its cap
  bool ok() const { return equivalence && per_choice && confined && !truncated; }
};
ReductionCheck verify_reduction(const KhOvInstance& inst, const ReductionOutput& out);

// (k,h)-OV identity for k = h = 2: on the D-blocks alone,
// |N(x1) u N(x2)| == |a1|*s + |a2|*s - a1.a2 for every cross pair.
bool check_two_family_identity(const KhOvInstance& inst, const ReductionOutput& out);

// parts = q*k blocks of equal size; vertex v lies in block v / part_size.
struct PartiteHypergraph {
  int parts = 0;
  int part_size = 0;
  int h = 0;
  std::vector<std::vector<Id>> edges;  // each sorted, one vertex per touched block
};

PartiteHypergraph random_partite_hypergraph(Rng& rng, int parts, int part_size, int h, double p);
bool has_hyperclique(const PartiteHypergraph& g);

// Vectors are q-tuples inside a family's blocks; coordinates are non-edges.
KhOvInstance hyperclique_to_khov(const PartiteHypergraph& g, int q);

}  // namespace mkc
