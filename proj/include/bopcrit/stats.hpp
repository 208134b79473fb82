#pragma once

#include "bopcrit/graph.hpp"

#include <string>
#include <vector>

namespace bopcrit {

// AUC benchmark results: one row per graph, one column per measure.
struct BenchmarkTable {
  std::vector<std::string> graph_ids;
  std::vector<std::string> measures;
  Matrix auc;

  int graphs() const { return static_cast<int>(auc.rows()); }
  int k() const { return static_cast<int>(auc.cols()); }
  void validate() const;  // shape consistent, every cell in (0, 1]
};

struct NemenyiResult {
  Vector mean_ranks;  // larger-is-better polarity (k+1 - raw Friedman rank)
  double critical_difference = 0.0;
  double alpha = 0.05;
};

struct BordaResult {
  std::vector<int> order;  // column indices, best first
  Vector points;           // summed Borda points per column
};

struct WardMerge {
  int left = 0;   // cluster ids: 0..m-1 originals, m+step for merged clusters
  int right = 0;
  double height = 0.0;
};

struct SummaryRow {
  double mean = 0.0;
  double stddev = 0.0;  // sample (N-1); 0 when N == 1
  int count = 0;
};

// Tie-corrected Kendall tau-b. Rejects length mismatches, lengths < 2, NaNs,
// and zero-variance inputs (tau undefined).
double kendall_tau_b(const Vector& a, const Vector& b);

// Mean per-graph tau-b between every pair of measures; diagonal exactly 1.
// per_graph_scores[g][m] is measure m's score vector on graph g. Graph cells
// where tau is undefined for a pair (zero variance) are skipped for that
// pair; a pair undefined on every graph is an error.
Matrix correlation_matrix(const std::vector<std::vector<Vector>>& per_graph_scores);

// Friedman mean ranks (midrank ties, smaller AUC = better, reported flipped
// to larger-is-better) plus the Nemenyi critical difference
// q_alpha * sqrt(k(k+1)/(6N)). Only alpha = 0.05 is supported (embedded
// critical-value table, k <= 30).
NemenyiResult friedman_nemenyi(const BenchmarkTable& table, double alpha = 0.05);

// Borda aggregation: per graph the best (smallest) AUC earns k points, the
// next k-1, ...; ties share the midpoint. Total points sorted descending,
// ties broken by measure name.
BordaResult borda(const BenchmarkTable& table);

// Agglomerative Ward clustering of measures on distance d = 1 - tau.
// Returns m-1 merges; heights are non-decreasing.
std::vector<WardMerge> ward_cluster(const Matrix& corr);

// Column means and sample standard deviations.
std::vector<SummaryRow> summarize(const BenchmarkTable& table);

}  // namespace bopcrit
