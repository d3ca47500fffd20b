#include "maxcover/random.hpp"

#include <vector>

namespace mkc {

CoverInstance random_cover(Rng& rng, int n, int u, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<Id>> sets(n);
  for (auto& s : sets)
    for (Id y = 0; y < u; ++y)
      if (coin(rng)) s.push_back(y);
  return CoverInstance::from_sets(u, sets);
}

PdsGraph random_graph(Rng& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Id, Id>> edges;
  for (Id a = 0; a < n; ++a)
    for (Id b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return PdsGraph::from_edges(n, edges);
}

PdsGraph random_bounded_degree_graph(Rng& rng, int n, int max_deg, std::int64_t attempts) {
  if (attempts <= 0) attempts = 4LL * n * max_deg;
  std::vector<int> deg(n, 0);
  std::vector<std::pair<Id, Id>> edges;
  if (n < 2) return PdsGraph::from_edges(n, edges);
  std::uniform_int_distribution<Id> pick(0, n - 1);
  std::vector<std::vector<Id>> adj(n);
  for (std::int64_t t = 0; t < attempts; ++t) {
    Id a = pick(rng), b = pick(rng);
    if (a == b || deg[a] >= max_deg || deg[b] >= max_deg) continue;
    bool dup = false;
    for (Id w : adj[a])
      if (w == b) dup = true;
    if (dup) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
    ++deg[a];
    ++deg[b];
    edges.emplace_back(a, b);
  }
  return PdsGraph::from_edges(n, edges);
}

}  // namespace mkc
