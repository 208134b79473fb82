#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bopcrit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;
};

// How edge costs are obtained from edge weights.
enum class CostKind { Reciprocal, Unit, Explicit };

struct CostPolicy {
  CostKind kind = CostKind::Reciprocal;
  Matrix explicit_costs;  // only consulted when kind == Explicit

  static CostPolicy reciprocal() { return {CostKind::Reciprocal, {}}; }
  static CostPolicy unit() { return {CostKind::Unit, {}}; }
  static CostPolicy explicit_matrix(Matrix costs) {
    return {CostKind::Explicit, std::move(costs)};
  }
};

// Partition of the node set into connected components. Component ids are
// 0-based and assigned so that sizes[] is non-increasing (ties keep the order
// of first appearance).
struct ComponentDecomposition {
  std::vector<int> component_of;  // node index -> component id
  std::vector<int> sizes;         // per component id, non-increasing

  int count() const { return static_cast<int>(sizes.size()); }
  int largest() const { return sizes.empty() ? 0 : sizes.front(); }

  // Node indices grouped by component id, ascending within each group.
  std::vector<std::vector<int>> members() const;
};

// Immutable undirected weighted graph with a dense symmetric weight matrix.
// Nodes carry stable integer labels that survive deletions; indices are the
// 0..n-1 positions in the current matrix.
class Graph {
 public:
  Graph() = default;

  static Graph from_weights(Matrix weights);
  static Graph from_weights(Matrix weights, std::vector<int> labels);
  // Builds an n-node graph from an edge list; each undirected edge may be
  // listed once (it is mirrored). Conflicting duplicate weights are rejected.
  static Graph from_edge_list(const std::vector<Edge>& edges, int n);

  int size() const { return static_cast<int>(w_.rows()); }
  const Matrix& weights() const { return w_; }
  double weight(int i, int j) const { return w_(i, j); }
  const std::vector<int>& labels() const { return labels_; }
  int label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  bool has_edge(int i, int j) const { return w_(i, j) > 0.0; }

  // Weighted degree (row sum of the weight matrix).
  double degree(int i) const { return w_.row(i).sum(); }
  std::vector<Edge> edge_list() const;  // i < j, weight > 0
  int edge_count() const;

  // Pairwise cost matrix: policy cost on edges, +inf off edges and on the
  // diagonal (no self-transitions).
  Matrix cost_matrix(const CostPolicy& policy) const;

  // Random-walk transition matrix P^ref = D^-1 W; rows of zero-degree nodes
  // are identically zero.
  Matrix transition_matrix() const;

  // Combinatorial Laplacian L = D - W.
  Matrix laplacian() const;

  ComponentDecomposition connected_components() const;
  bool is_connected() const { return size() == 0 || connected_components().count() == 1; }

  // Copy of the graph with node index j removed; labels are preserved.
  Graph delete_node(int j) const;

  // Induced subgraph on the given node indices (kept in the given order).
  Graph induced(const std::vector<int>& nodes) const;

  // Induced subgraph on all nodes at hop distance <= h from node j
  // (edge weights ignored for the hop metric). Always contains j.
  Graph h_neighborhood(int j, int h) const;

 private:
  Graph(Matrix w, std::vector<int> labels) : w_(std::move(w)), labels_(std::move(labels)) {}
  void check_index(int i, const char* what) const;

  Matrix w_;
  std::vector<int> labels_;
};

}  // namespace bopcrit
