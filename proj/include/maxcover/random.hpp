#pragma once

#include <cstdint>
#include <random>

#include "maxcover/instance.hpp"

namespace mkc {

using Rng = std::mt19937_64;

// Each incidence (set, element) present independently with probability p.
CoverInstance random_cover(Rng& rng, int n, int u, double p);

// G(n, p).
PdsGraph random_graph(Rng& rng, int n, double p);

// Random edges added while both endpoints have degree < max_deg; stops after
// `attempts` proposals (default 4 * n * max_deg).
PdsGraph random_bounded_degree_graph(Rng& rng, int n, int max_deg, std::int64_t attempts = 0);

}  // namespace mkc
