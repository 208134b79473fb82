#pragma once

#include "bopcrit/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bopcrit {

struct GeneratorSpec {
  enum class Kind { ER, AB };

  Kind kind = Kind::ER;
  int n = 0;
  double p = 0.0;  // ER
  int m = 0;       // AB
  std::uint64_t seed = 0;

  double param() const { return kind == Kind::ER ? p : static_cast<double>(m); }
  std::string kind_name() const { return kind == Kind::ER ? "er" : "ab"; }
};

// G(n, p): every unordered pair carries a unit-weight edge with probability p.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

// Preferential attachment: complete seed graph on m+1 nodes, then each new
// node attaches to m distinct existing nodes chosen proportionally to degree
// (re-drawing on collision). Unit weights.
Graph albert_barabasi(int n, int m, std::uint64_t seed);

struct PopulationEntry {
  GeneratorSpec spec;
  Graph graph;
};

// `count` graphs of one kind with n uniform in [n_min, n_max]; ER draws
// p uniform in (0, 0.5], AB draws m uniform in {1..6} (clamped to n-1).
std::vector<PopulationEntry> sample_population(int count, GeneratorSpec::Kind kind, int n_min,
                                               int n_max, std::uint64_t seed);

// Materializes one spec (dispatch on kind).
Graph generate(const GeneratorSpec& spec);

}  // namespace bopcrit
