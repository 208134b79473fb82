#pragma once

#include "bopcrit/generators.hpp"
#include "bopcrit/graph.hpp"
#include "bopcrit/rng.hpp"

#include <cstdint>
#include <vector>

namespace testutil {

using bopcrit::Graph;

inline Graph path_graph(int n, double w = 1.0) {
  std::vector<bopcrit::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return Graph::from_edge_list(edges, n);
}

inline Graph cycle_graph(int n) {
  std::vector<bopcrit::Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph::from_edge_list(edges, n);
}

inline Graph complete_graph(int n, double w = 1.0) {
  std::vector<bopcrit::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  return Graph::from_edge_list(edges, n);
}

// Star K_{1,leaves}: node 0 is the center.
inline Graph star_graph(int leaves) {
  std::vector<bopcrit::Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph::from_edge_list(edges, leaves + 1);
}

// Six-node example graph used across the suite: labels 1..6, unit-weight
// edges 1-2, 2-3, 2-4, 4-5, 2-5, 5-6, 1-6.
inline Graph toy6() {
  std::vector<bopcrit::Edge> edges = {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {3, 4, 1},
                                      {1, 4, 1}, {4, 5, 1}, {0, 5, 1}};
  Graph g = Graph::from_edge_list(edges, 6);
  return Graph::from_weights(g.weights(), {1, 2, 3, 4, 5, 6});
}

// Random connected graph; retries derived seeds until connected.
inline Graph random_connected(bopcrit::GeneratorSpec::Kind kind, int n, std::uint64_t seed,
                              double p = 0.15, int m = 2) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = bopcrit::derive_seed(seed, attempt);
    Graph g = kind == bopcrit::GeneratorSpec::Kind::ER ? bopcrit::erdos_renyi(n, p, s)
                                                       : bopcrit::albert_barabasi(n, m, s);
    if (g.is_connected()) return g;
  }
}

}  // namespace testutil
