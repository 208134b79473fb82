#pragma once

#include "bopcrit/bop.hpp"
#include "bopcrit/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bopcrit {

// Parsed measure identifier, e.g. "ec", "wk:h=2", "bpc:theta=0.1",
// "bl:seed=42". BPC/BPCf accept optional "variant=entropy" and
// "order=restricted-first" keys.
struct MeasureId {
  enum class Kind { EC, SPB, RWB, EST, WK, KLE, WIE, KIR, KEM, SHV, BPC, BPCF, BL };

  Kind kind = Kind::EC;
  double theta = 1.0;                        // BPC / BPCF
  int h = 2;                                 // WK
  std::uint64_t seed = 0;                    // BL
  BopVariant variant = BopVariant::Standard; // BPC / BPCF
  KlOrder order = KlOrder::DeletedFirst;     // BPC / BPCF
  bool explicit_param = false;  // parameter given by the caller (disables tuning)

  static MeasureId parse(const std::string& text);
  std::string to_string() const;  // canonical form, parse(to_string()) == *this
  std::string family() const;     // identifier without parameters

  bool has_grid() const;                 // WK, BPC, BPCF
  std::vector<double> default_grid() const;
  MeasureId with_parameter(double value) const;

  bool operator==(const MeasureId&) const = default;
};

// Node ranking, most critical first. `order` holds node indices into the
// graph the scores were computed on, `order_labels` the matching stable
// labels. `trace[k]` names the rule that put order[k] ahead of order[k+1].
struct Ranking {
  enum class TieRule { Score, Degree, Label };

  std::vector<int> order;
  std::vector<int> order_labels;
  Vector scores;
  std::vector<TieRule> trace;
};

// --- per-node measures ------------------------------------------------------

// Weighted degree centrality.
Vector ec(const Graph& g);

// Freeman shortest-path betweenness over ordered pairs, counting all
// shortest paths with multiplicity (Brandes' accumulation); policy costs act
// as path lengths.
Vector spb(const Graph& g, const CostPolicy& policy);

// Newman current-flow (random-walk) betweenness; endpoints excluded.
Vector rwb(const Graph& g);

// Subgraph centrality: diagonal of expm(A).
Vector est(const Graph& g);

// Normalized local algebraic connectivity: lambda_2 of the h-neighborhood
// Laplacian over max(log2(degree), 1); isolated nodes score 0. Requires h >= 1.
Vector wk(const Graph& g, int h);

// Sensitivity of network criticality: KLE_j = sum_i a_ij (e_i - e_j)^T (L+)^2 (e_i - e_j).
Vector kle(const Graph& g);

// --- global graph quantities ------------------------------------------------

// Half-sum of pairwise shortest-path distances; each unreachable ordered
// pair contributes n * (largest finite distance, or 1 if none).
double wiener(const Graph& g, const CostPolicy& policy);

// Half-sum of pairwise effective resistances, same unreachable-pair penalty.
double kirchhoff(const Graph& g);

// Kemeny constant of the natural random walk, size-weighted average across
// components; single-node components contribute 0.
double kemeny(const Graph& g);

// Dominant adjacency eigenvalue ("shield value").
double shield(const Graph& g);

enum class GlobalKind { Wiener, Kirchhoff, Kemeny, Shield };

// Per-node criticality induced by a global quantity: +inf when deleting the
// node increases the component count, otherwise |value(G \ j) - value(G)|.
Vector derived_criticality(const Graph& g, GlobalKind kind, const CostPolicy& policy);

// Random permutation ranks (n down to 1), deterministic per seed.
Vector baseline_random(const Graph& g, std::uint64_t seed);

// Stationary distribution of the natural random walk, normalized within each
// component (isolated nodes carry their component's full mass of 1).
Vector stationary_distribution(const Graph& g);

// Dispatch on a MeasureId. `jobs` only affects BPC/BPCf parallelism; BL draws
// from id.seed.
Vector evaluate_measure(const Graph& g, const MeasureId& id, const CostPolicy& policy,
                        int jobs = 1);

// Descending-score ranking with deterministic tie-breaking: +inf sentinels
// first, then score, then weighted degree (descending), then label
// (ascending). NaN scores are rejected.
Ranking rank_nodes(const Graph& g, const Vector& scores);

}  // namespace bopcrit
