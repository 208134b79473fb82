#include "bopcrit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace bopcrit {

namespace {

void validate_weights(const Matrix& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("weight matrix must be square");
  const int n = static_cast<int>(w.rows());
  for (int i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw std::invalid_argument("self-loops are not allowed");
    for (int j = 0; j < n; ++j) {
      const double v = w(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("edge weights must be finite and non-negative");
      if (v != w(j, i)) throw std::invalid_argument("weight matrix must be symmetric");
    }
  }
}

}  // namespace

std::vector<std::vector<int>> ComponentDecomposition::members() const {
  std::vector<std::vector<int>> groups(sizes.size());
  for (int i = 0; i < static_cast<int>(component_of.size()); ++i)
    groups[static_cast<std::size_t>(component_of[static_cast<std::size_t>(i)])].push_back(i);
  return groups;
}

void Graph::check_index(int i, const char* what) const {
  if (i < 0 || i >= size()) throw std::invalid_argument(std::string(what) + " index out of range");
}

Graph Graph::from_weights(Matrix weights) {
  const int n = static_cast<int>(weights.rows());
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  return from_weights(std::move(weights), std::move(labels));
}

Graph Graph::from_weights(Matrix weights, std::vector<int> labels) {
  validate_weights(weights);
  if (static_cast<int>(labels.size()) != static_cast<int>(weights.rows()))
    throw std::invalid_argument("label count must match node count");
  return Graph(std::move(weights), std::move(labels));
}

Graph Graph::from_edge_list(const std::vector<Edge>& edges, int n) {
  if (n < 0) throw std::invalid_argument("node count must be non-negative");
  Matrix w = Matrix::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.i == e.j) throw std::invalid_argument("self-loops are not allowed");
    if (!std::isfinite(e.weight) || e.weight <= 0.0)
      throw std::invalid_argument("edge weights must be finite and positive");
    const double prev = w(e.i, e.j);
    if (prev != 0.0 && prev != e.weight)
      throw std::invalid_argument("duplicate edge with conflicting weight");
    w(e.i, e.j) = e.weight;
    w(e.j, e.i) = e.weight;
  }
  return from_weights(std::move(w));
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> edges;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (w_(i, j) > 0.0) edges.push_back({i, j, w_(i, j)});
  return edges;
}

int Graph::edge_count() const { return static_cast<int>(edge_list().size()); }

Matrix Graph::cost_matrix(const CostPolicy& policy) const {
  const int n = size();
  if (policy.kind == CostKind::Explicit) {
    const Matrix& c = policy.explicit_costs;
    if (c.rows() != n || c.cols() != n)
      throw std::invalid_argument("explicit cost matrix has wrong dimensions");
  }
  Matrix c = Matrix::Constant(n, n, kInf);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || w_(i, j) <= 0.0) continue;
      double cost = 0.0;
      switch (policy.kind) {
        case CostKind::Reciprocal: cost = 1.0 / w_(i, j); break;
        case CostKind::Unit: cost = 1.0; break;
        case CostKind::Explicit: cost = policy.explicit_costs(i, j); break;
      }
      if (!std::isfinite(cost) || cost <= 0.0)
        throw std::invalid_argument("edge costs must be finite and positive");
      if (policy.kind == CostKind::Explicit && policy.explicit_costs(j, i) != cost)
        throw std::invalid_argument("explicit cost matrix must be symmetric on edges");
      c(i, j) = cost;
    }
  }
  return c;
}

Matrix Graph::transition_matrix() const {
  const int n = size();
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double d = degree(i);
    if (d > 0.0) p.row(i) = w_.row(i) / d;
  }
  return p;
}

Matrix Graph::laplacian() const {
  Matrix l = -w_;
  for (int i = 0; i < size(); ++i) l(i, i) = degree(i);
  return l;
}

ComponentDecomposition Graph::connected_components() const {
  const int n = size();
  std::vector<int> raw(static_cast<std::size_t>(n), -1);
  int next_id = 0;
  for (int start = 0; start < n; ++start) {
    if (raw[static_cast<std::size_t>(start)] != -1) continue;
    std::queue<int> frontier;
    frontier.push(start);
    raw[static_cast<std::size_t>(start)] = next_id;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v = 0; v < n; ++v) {
        if (w_(u, v) > 0.0 && raw[static_cast<std::size_t>(v)] == -1) {
          raw[static_cast<std::size_t>(v)] = next_id;
          frontier.push(v);
        }
      }
    }
    ++next_id;
  }

  // Renumber ids by non-increasing size, stable in first-appearance order.
  std::vector<int> raw_sizes(static_cast<std::size_t>(next_id), 0);
  for (int id : raw) ++raw_sizes[static_cast<std::size_t>(id)];
  std::vector<int> order(static_cast<std::size_t>(next_id));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return raw_sizes[static_cast<std::size_t>(a)] > raw_sizes[static_cast<std::size_t>(b)];
  });
  std::vector<int> new_id(static_cast<std::size_t>(next_id));
  for (int k = 0; k < next_id; ++k) new_id[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

  ComponentDecomposition dec;
  dec.component_of.resize(static_cast<std::size_t>(n));
  dec.sizes.resize(static_cast<std::size_t>(next_id));
  for (int i = 0; i < n; ++i)
    dec.component_of[static_cast<std::size_t>(i)] = new_id[static_cast<std::size_t>(raw[static_cast<std::size_t>(i)])];
  for (int k = 0; k < next_id; ++k)
    dec.sizes[static_cast<std::size_t>(new_id[static_cast<std::size_t>(k)])] = raw_sizes[static_cast<std::size_t>(k)];
  return dec;
}

Graph Graph::delete_node(int j) const {
  check_index(j, "node");
  if (size() == 1) throw std::invalid_argument("cannot delete the only node of a graph");
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(size() - 1));
  for (int i = 0; i < size(); ++i)
    if (i != j) keep.push_back(i);
  return induced(keep);
}

Graph Graph::induced(const std::vector<int>& nodes) const {
  const int m = static_cast<int>(nodes.size());
  std::vector<char> seen(static_cast<std::size_t>(size()), 0);
  for (int i : nodes) {
    check_index(i, "node");
    if (seen[static_cast<std::size_t>(i)]) throw std::invalid_argument("duplicate node in induced set");
    seen[static_cast<std::size_t>(i)] = 1;
  }
  Matrix w(m, m);
  std::vector<int> labels(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    labels[static_cast<std::size_t>(a)] = labels_[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])];
    for (int b = 0; b < m; ++b)
      w(a, b) = w_(nodes[static_cast<std::size_t>(a)], nodes[static_cast<std::size_t>(b)]);
  }
  return Graph(std::move(w), std::move(labels));
}

Graph Graph::h_neighborhood(int j, int h) const {
  check_index(j, "node");
  if (h < 0) throw std::invalid_argument("neighborhood radius must be non-negative");
  const int n = size();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(j)] = 0;
  frontier.push(j);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    if (dist[static_cast<std::size_t>(u)] == h) continue;
    for (int v = 0; v < n; ++v) {
      if (w_(u, v) > 0.0 && dist[static_cast<std::size_t>(v)] == -1) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  std::vector<int> nodes;
  for (int i = 0; i < n; ++i)
    if (dist[static_cast<std::size_t>(i)] != -1) nodes.push_back(i);
  return induced(nodes);
}

}  // namespace bopcrit
