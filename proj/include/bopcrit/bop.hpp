#pragma once

#include "bopcrit/graph.hpp"

#include <string>
#include <vector>

namespace bopcrit {

// Path-weighting variant. Standard mixes the random-walk likelihood with the
// Gibbs factor (W = P ∘ exp(-theta*C)); EntropyConstraint drops the
// likelihood term (W = exp(-theta*C) on edges).
enum class BopVariant { Standard, EntropyConstraint };

// Order of the two distributions inside the divergence that scores a node.
// DeletedFirst compares the recomputed (deleted-node) distribution against
// the restricted one; RestrictedFirst swaps them. DeletedFirst is the
// default; RestrictedFirst diverges to +inf exactly at cut nodes.
enum class KlOrder { DeletedFirst, RestrictedFirst };

struct BopModel {
  double theta = 1.0;
  BopVariant variant = BopVariant::Standard;
  Graph graph;
  Matrix w;  // path-weight matrix
  Matrix z;  // fundamental matrix (I - W)^-1, computed per component
};

// Joint start/end probability table over a node subset. `support` holds the
// node indices (in the originating graph) that the rows/cols of `probs`
// refer to; probs sums to 1 (all entries >= 0).
struct BopProbabilities {
  std::vector<int> support;
  Matrix probs;
};

// Per-node criticality scores plus the settings that produced them.
struct CriticalityVector {
  Vector scores;
  double theta = 1.0;
  BopVariant variant = BopVariant::Standard;
  KlOrder order = KlOrder::DeletedFirst;
  std::string method;  // "bpc" or "bpcf"
};

// Builds W and Z for the graph. Entries of W below 1e-300 are flushed to
// zero. Works on disconnected graphs: Z is assembled per component, so
// cross-component entries are exactly zero. Inversion failures carry the
// theta value in their message.
BopModel build_model(const Graph& g, const CostPolicy& policy, double theta,
                     BopVariant variant = BopVariant::Standard);

// Test-only oracle: sum of path weights over all walks of length <= max_len,
// i.e. sum_{k<=max_len} W^k (including the empty walk, k = 0).
// Restricted to n <= 10 and max_len <= 40.
Matrix path_sum_oracle(const Graph& g, const CostPolicy& policy, double theta, int max_len);

// Joint probability that a path starts at i and ends at j: z_ij / sum(Z).
BopProbabilities bop_probabilities(const BopModel& model);

// Probabilities restricted to paths avoiding node j: row/column j of Z are
// dropped and the remainder renormalized.
BopProbabilities restricted_probabilities(const BopModel& model, int j);

// Probabilities of the graph with node j actually deleted, computed from
// scratch (per surviving component; normalized across all survivors).
BopProbabilities deleted_probabilities_exact(const Graph& g, const CostPolicy& policy,
                                             double theta, BopVariant variant, int j);

// Rank-one update of Z after removing node j: Z - z_col_j * z_row_j / z_jj,
// with row/column j exactly zero. Equals the fundamental matrix of W with
// row/column j zeroed. Requires |z_jj| > 1e-12.
Matrix sherman_deleted(const BopModel& model, int j);

// KL divergence sum p log(p/q) with 0*log(0/0) = 0 and +inf when p > 0 meets
// q = 0. Supports must match.
double kl_divergence(const BopProbabilities& p, const BopProbabilities& q);

// Exact criticality: for each node j, divergence between the
// deleted-and-recomputed and the restricted probability tables. O(n^4).
CriticalityVector bpc(const Graph& g, const CostPolicy& policy, double theta,
                      BopVariant variant = BopVariant::Standard,
                      KlOrder order = KlOrder::DeletedFirst, int jobs = 1);

// Fast criticality: same divergence but the deleted table comes from the
// rank-one update, so only one inversion per component is needed. O(n^3).
CriticalityVector bpcf(const Graph& g, const CostPolicy& policy, double theta,
                       BopVariant variant = BopVariant::Standard,
                       KlOrder order = KlOrder::DeletedFirst, int jobs = 1);

}  // namespace bopcrit
