#include "bopcrit/bop.hpp"

#include "bopcrit/linalg.hpp"
#include "bopcrit/parallel.hpp"

#include <cmath>
#include <sstream>

namespace bopcrit {

namespace {

constexpr double kWeightFlush = 1e-300;  // underflow guard for W entries

Matrix gather(const Matrix& m, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  Matrix out(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      out(a, b) = m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  return out;
}

Matrix build_weight_matrix(const Graph& g, const CostPolicy& policy, double theta,
                           BopVariant variant) {
  const int n = g.size();
  const Matrix c = g.cost_matrix(policy);
  const Matrix p = variant == BopVariant::Standard ? g.transition_matrix() : Matrix();
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(c(i, j))) continue;  // off-edge / diagonal
      const double gibbs = std::exp(-theta * c(i, j));
      double v = variant == BopVariant::Standard ? p(i, j) * gibbs : gibbs;
      if (v < kWeightFlush) v = 0.0;
      w(i, j) = v;
    }
  }
  return w;
}

// Normalizes a non-negative table into a probability matrix. Negative
// round-off residue (true zeros computed as ~ -1e-18) is clamped to zero.
BopProbabilities make_probabilities(Matrix m, std::vector<int> support, const char* what) {
  m = m.cwiseMax(0.0);
  const double total = m.sum();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error(std::string(what) + ": probability mass is not positive and finite");
  m /= total;
  return {std::move(support), std::move(m)};
}

std::string theta_context(double theta) {
  std::ostringstream os;
  os << "while building BoP model at theta=" << theta;
  return os.str();
}

// Scores a connected graph with >= 2 nodes; `deleted_table` produces the
// post-deletion probability table for a node index.
template <typename DeletedTableFn>
Vector score_connected(const BopModel& model, KlOrder order, int jobs, DeletedTableFn&& deleted_table) {
  const int m = model.graph.size();
  Vector scores(m);
  parallel_for(0, m, jobs, [&](int j) {
    const BopProbabilities restricted = restricted_probabilities(model, j);
    const BopProbabilities deleted = deleted_table(j);
    scores(j) = order == KlOrder::DeletedFirst ? kl_divergence(deleted, restricted)
                                               : kl_divergence(restricted, deleted);
  });
  return scores;
}

template <typename ConnectedScorer>
Vector per_component_scores(const Graph& g, ConnectedScorer&& scorer) {
  if (g.size() < 2) throw std::invalid_argument("criticality needs at least two nodes");
  Vector scores = Vector::Zero(g.size());
  for (const std::vector<int>& group : g.connected_components().members()) {
    if (group.size() == 1) continue;  // isolated nodes score 0
    const Graph sub = g.induced(group);
    const Vector s = scorer(sub);
    for (int k = 0; k < static_cast<int>(group.size()); ++k)
      scores(group[static_cast<std::size_t>(k)]) = s(k);
  }
  return scores;
}

}  // namespace

BopModel build_model(const Graph& g, const CostPolicy& policy, double theta, BopVariant variant) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("theta must be positive and finite");
  const int n = g.size();
  if (n == 0) throw std::invalid_argument("graph must be non-empty");

  Matrix w = build_weight_matrix(g, policy, theta, variant);

  if (variant == BopVariant::EntropyConstraint) {
    // Without the likelihood factor the path series only converges when the
    // spectral radius of W stays below one.
    const EigenDecomposition dec = sym_eigen(w);
    const double rho = std::max(std::abs(dec.eigenvalues(0)), std::abs(dec.eigenvalues(n - 1)));
    if (rho >= 1.0 - 1e-12) {
      std::ostringstream os;
      os << "entropy-constraint path weights diverge (spectral radius " << rho
         << " >= 1) at theta=" << theta << "; increase theta";
      throw std::invalid_argument(os.str());
    }
  }

  // Invert I - W block by block so cross-component entries of Z are exact
  // zeros even in floating point.
  Matrix z = Matrix::Zero(n, n);
  for (const std::vector<int>& group : g.connected_components().members()) {
    const int k = static_cast<int>(group.size());
    if (k == 1) {
      z(group[0], group[0]) = 1.0;  // only the empty path
      continue;
    }
    const Matrix wb = gather(w, group);
    Matrix zb;
    try {
      zb = invert(Matrix::Identity(k, k) - wb);
    } catch (const SingularMatrixError& e) {
      throw SingularMatrixError(e.rcond, theta_context(theta));
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        z(group[static_cast<std::size_t>(a)], group[static_cast<std::size_t>(b)]) = zb(a, b);
  }

  BopModel model;
  model.theta = theta;
  model.variant = variant;
  model.graph = g;
  model.w = std::move(w);
  model.z = std::move(z);
  return model;
}

Matrix path_sum_oracle(const Graph& g, const CostPolicy& policy, double theta, int max_len) {
  if (g.size() > 10) throw std::invalid_argument("path_sum_oracle is limited to n <= 10");
  if (max_len < 0 || max_len > 40)
    throw std::invalid_argument("path_sum_oracle is limited to 0 <= max_len <= 40");
  const Matrix w = build_weight_matrix(g, policy, theta, BopVariant::Standard);
  Matrix acc = Matrix::Identity(g.size(), g.size());
  Matrix pw = acc;
  for (int k = 1; k <= max_len; ++k) {
    pw = pw * w;
    acc += pw;
  }
  return acc;
}

BopProbabilities bop_probabilities(const BopModel& model) {
  std::vector<int> support(static_cast<std::size_t>(model.graph.size()));
  for (int i = 0; i < model.graph.size(); ++i) support[static_cast<std::size_t>(i)] = i;
  return make_probabilities(model.z, std::move(support), "bop_probabilities");
}

BopProbabilities restricted_probabilities(const BopModel& model, int j) {
  const int n = model.graph.size();
  if (j < 0 || j >= n) throw std::invalid_argument("node index out of range");
  if (n < 2) throw std::invalid_argument("restriction needs at least two nodes");
  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i)
    if (i != j) support.push_back(i);
  Matrix sub = gather(model.z, support);
  return make_probabilities(std::move(sub), std::move(support), "restricted_probabilities");
}

BopProbabilities deleted_probabilities_exact(const Graph& g, const CostPolicy& policy,
                                             double theta, BopVariant variant, int j) {
  const int n = g.size();
  if (j < 0 || j >= n) throw std::invalid_argument("node index out of range");
  if (n < 2) throw std::invalid_argument("deletion needs at least two nodes");
  const Graph del = g.delete_node(j);
  const BopModel model = build_model(del, policy, theta, variant);
  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i)
    if (i != j) support.push_back(i);
  // model.z is block-diagonal over the surviving components; the table is
  // normalized across all survivors at once.
  return make_probabilities(model.z, std::move(support), "deleted_probabilities_exact");
}

Matrix sherman_deleted(const BopModel& model, int j) {
  const int n = model.graph.size();
  if (j < 0 || j >= n) throw std::invalid_argument("node index out of range");
  const double zjj = model.z(j, j);
  if (!(std::abs(zjj) > 1e-12))
    throw std::runtime_error("sherman_deleted: pivot z_jj is numerically zero");
  Matrix out = model.z - (model.z.col(j) * model.z.row(j)) / zjj;
  out.row(j).setZero();
  out.col(j).setZero();
  return out;
}

double kl_divergence(const BopProbabilities& p, const BopProbabilities& q) {
  if (p.support != q.support)
    throw std::invalid_argument("kl_divergence requires matching supports");
  if (p.probs.rows() != q.probs.rows() || p.probs.cols() != q.probs.cols())
    throw std::invalid_argument("kl_divergence requires matching table shapes");
  double acc = 0.0;
  for (int i = 0; i < p.probs.rows(); ++i) {
    for (int k = 0; k < p.probs.cols(); ++k) {
      const double pv = p.probs(i, k);
      if (pv <= 0.0) continue;  // 0 * log(0/q) = 0 by convention
      const double qv = q.probs(i, k);
      if (qv <= 0.0) return kInf;
      acc += pv * std::log(pv / qv);
    }
  }
  return acc;
}

CriticalityVector bpc(const Graph& g, const CostPolicy& policy, double theta, BopVariant variant,
                      KlOrder order, int jobs) {
  CriticalityVector out;
  out.scores = per_component_scores(g, [&](const Graph& sub) {
    const BopModel model = build_model(sub, policy, theta, variant);
    return score_connected(model, order, jobs, [&](int j) {
      return deleted_probabilities_exact(sub, policy, theta, variant, j);
    });
  });
  out.theta = theta;
  out.variant = variant;
  out.order = order;
  out.method = "bpc";
  return out;
}

CriticalityVector bpcf(const Graph& g, const CostPolicy& policy, double theta, BopVariant variant,
                       KlOrder order, int jobs) {
  CriticalityVector out;
  out.scores = per_component_scores(g, [&](const Graph& sub) {
    const BopModel model = build_model(sub, policy, theta, variant);
    const Matrix& z = model.z;
    const int m = sub.size();
    // The restricted and rank-one-deleted tables share their normalizers with
    // simple functions of the row/column sums, so the KL divergence collapses
    // to one fused pass over Z per node instead of materializing both tables.
    const double total = z.sum();
    const Vector rowsum = z.rowwise().sum();
    const Vector colsum = z.colwise().sum().transpose();

    Vector scores(m);
    parallel_for(0, m, jobs, [&](int j) {
      const double zjj = z(j, j);
      if (!(std::abs(zjj) > 1e-12))
        throw std::runtime_error("bpcf: pivot z_jj is numerically zero");
      const double s_r = total - rowsum(j) - colsum(j) + zjj;
      const double s_d = s_r - (colsum(j) - zjj) * (rowsum(j) - zjj) / zjj;
      if (!(s_r > 0.0) || !(s_d > 0.0) || !std::isfinite(s_d))
        throw std::runtime_error("bpcf: probability mass is not positive and finite");

      Matrix d = z - (z.col(j) * z.row(j)) / zjj;
      if (order == KlOrder::DeletedFirst) {
        // sum_{d>0} (d/S_d) log((d/S_d) / (z/S_r)); negative round-off of
        // exact zeros is clamped out by the d > 0 mask.
        d.row(j).setZero();
        d.col(j).setZero();
        const double t = (d.array() > 0.0)
                             .select(d.array() * (d.array() / z.array()).log(), 0.0)
                             .sum();
        scores(j) = t / s_d + std::log(s_r / s_d);
      } else {
        // Restricted-first order: any vanished deleted-table entry (the node
        // was a cut vertex) sends the divergence to +infinity.
        d.row(j).setOnes();
        d.col(j).setOnes();
        if ((d.array() <= 0.0).any()) {
          scores(j) = kInf;
          return;
        }
        Matrix zr = z;
        zr.row(j).setZero();
        zr.col(j).setZero();
        const double t = (zr.array() > 0.0)
                             .select(zr.array() * (zr.array() / d.array()).log(), 0.0)
                             .sum();
        scores(j) = t / s_r + std::log(s_d / s_r);
      }
    });
    return scores;
  });
  out.theta = theta;
  out.variant = variant;
  out.order = order;
  out.method = "bpcf";
  return out;
}

}  // namespace bopcrit
