#pragma once

#include "wtap/core.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace fixtures {

using wtap::Rational;

inline Rational q(const char* text) {
  Rational r;
  wtap::parse_rational(text, r);
  return r;
}

// Path 0-1-...-(n-1).
inline std::vector<std::pair<int, int>> path_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return e;
}

// Root 0 with children 1..n-1.
inline std::vector<std::pair<int, int>> star_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  return e;
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace fixtures

#include <random>

namespace fixtures {

// Small random instance for property tests: random parent among lower ids,
// each non-tree pair a link with probability `density`, costs 1..max_cost,
// plus a fallback parent link for every uncovered edge.
inline wtap::Instance random_instance(std::mt19937_64& rng, int n, double density, int max_cost,
                                      bool uplinks_only = false) {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> parent(n, 0);
  for (int v = 1; v < n; ++v) {
    parent[v] = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.emplace_back(parent[v], v);
  }
  wtap::Instance tree = wtap::build_instance(n, edges, {});
  std::vector<wtap::LinkSpec> links;
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> cost(1, max_cost);
  std::vector<char> covered(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (parent[b] == a) continue;
      if (uplinks_only && !tree.is_ancestor(a, b)) continue;
      if (coin(rng) >= density) continue;
      links.push_back({a, b, cost(rng)});
      for (auto e : tree.tree_path(a, b)) covered[e.child] = 1;
    }
  }
  for (int v = 1; v < n; ++v) {
    if (!covered[v]) links.push_back({parent[v], v, max_cost});
  }
  return wtap::build_instance(n, edges, links);
}

// Plain subset enumeration, no pruning.
inline Rational naive_opt(const wtap::Instance& inst) {
  const int m = inst.num_links();
  std::uint64_t full = 0;
  for (int v = 1; v < inst.num_vertices(); ++v) full |= std::uint64_t{1} << v;
  bool found = false;
  Rational best;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    std::uint64_t mask = 0;
    Rational c = 0;
    for (int id = 0; id < m; ++id) {
      if (s >> id & 1) {
        mask |= inst.path_mask(id);
        c += inst.cost(id);
      }
    }
    if (mask == full && (!found || c < best)) {
      best = c;
      found = true;
    }
  }
  return best;
}

}  // namespace fixtures
