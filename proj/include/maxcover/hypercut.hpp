#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "maxcover/instance.hpp"

namespace mkc {

// Three candidate sets sharing a universe element (the smallest one is kept).
struct Hyperedge {
  std::array<Id, 3> v;  // ascending
  Id witness = 0;
  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// A c-bundle: 1+2c candidates grown from vertices[root] by c extensions.
// Each witness step (b, x, y) adds x and y, with b already present.
struct Bundle {
  std::vector<Id> vertices;  // sorted
  int order = 0;
  Id root = 0;
  std::vector<std::array<Id, 3>> witness;
};

std::optional<Id> is_hyperedge(const CoverInstance& inst, Id x1, Id x2, Id x3);

// Enumerated per element, then per owner triple; deduplicated, sorted by vertex triple.
std::vector<Hyperedge> list_hyperedges(const CoverInstance& inst);

// Every distinct c-bundle, ordered by sorted vertex set.  stats->ops counts the
// owner pairs examined while extending, stats->bundles the bundles produced.
std::vector<Bundle> enumerate_bundles(const CoverInstance& inst, int c, SolveStats* stats = nullptr);

// Replays the witness chain and checks every step is a genuine hyperedge.
bool bundle_is_valid(const CoverInstance& inst, const Bundle& b);

// Bundles (any order) with no possible extension inside `domain`.
// An empty domain means all of X.
std::vector<std::vector<Id>> maximal_bundles(const CoverInstance& inst, const std::vector<Id>& domain = {});

// True iff no hyperedge has one vertex in each part.
bool is_arity_reducing_hypercut(const CoverInstance& inst, const std::vector<Id>& S1, const std::vector<Id>& S2,
                                const std::vector<Id>& S3);

struct TwoBundleDecomposition {
  Bundle D1;  // vertices empty when unused
  Bundle D2;
  std::array<std::vector<Id>, 3> parts;  // sizes ceil(k'/3), ceil((k'-1)/3), floor(k'/3)
};

// Removes at most two bundles from S so that the rest splits into a balanced
// arity-reducing hypercut.  Throws InvariantError if the construction fails.
TwoBundleDecomposition check_two_bundle_decomposition(const CoverInstance& inst, const std::vector<Id>& S);

}  // namespace mkc
