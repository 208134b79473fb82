#include "bopcrit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bopcrit {

namespace {

// Upper 5% studentized-range quantiles divided by sqrt(2), infinite degrees
// of freedom, for k = 2..30 groups (Nemenyi critical values).
constexpr int kQTableMin = 2;
constexpr int kQTableMax = 30;
constexpr double kQTable005[] = {
    1.959964, 2.343701, 2.569032, 2.727774, 2.849705, 2.948320, 3.030878,
    3.101730, 3.163684, 3.218654, 3.268004, 3.312739, 3.353618, 3.391230,
    3.426041, 3.458425, 3.488685, 3.517073, 3.543799, 3.569040, 3.592946,
    3.615646, 3.637252, 3.657861, 3.677556, 3.696413, 3.714498, 3.731869,
    3.748578};

// Midranks (1-based, ties averaged) of the values, ascending.
Vector midranks(const Vector& values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return values(a) < values(b); });
  Vector ranks(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && values(idx[static_cast<std::size_t>(j + 1)]) ==
                            values(idx[static_cast<std::size_t>(i)]))
      ++j;
    const double shared = (static_cast<double>(i) + j) / 2.0 + 1.0;
    for (int t = i; t <= j; ++t) ranks(idx[static_cast<std::size_t>(t)]) = shared;
    i = j + 1;
  }
  return ranks;
}

bool has_variance(const Vector& v) {
  for (int i = 1; i < v.size(); ++i)
    if (v(i) != v(0)) return true;
  return false;
}

}  // namespace

void BenchmarkTable::validate() const {
  if (auc.rows() != static_cast<Eigen::Index>(graph_ids.size()) ||
      auc.cols() != static_cast<Eigen::Index>(measures.size()))
    throw std::invalid_argument("benchmark table shape does not match its headers");
  if (auc.rows() == 0 || auc.cols() == 0)
    throw std::invalid_argument("benchmark table must be non-empty");
  for (int r = 0; r < auc.rows(); ++r)
    for (int c = 0; c < auc.cols(); ++c) {
      const double v = auc(r, c);
      if (!(v > 0.0) || v > 1.0)
        throw std::invalid_argument("benchmark table cells must lie in (0, 1]");
    }
}

double kendall_tau_b(const Vector& a, const Vector& b) {
  const int n = static_cast<int>(a.size());
  if (n != static_cast<int>(b.size())) throw std::invalid_argument("kendall: length mismatch");
  if (n < 2) throw std::invalid_argument("kendall: need at least two observations");
  for (int i = 0; i < n; ++i)
    if (std::isnan(a(i)) || std::isnan(b(i)))
      throw std::invalid_argument("kendall: NaN in input");
  if (!has_variance(a) || !has_variance(b))
    throw std::invalid_argument("kendall: tau undefined for zero-variance input");

  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Comparisons are well-defined for +inf sentinels too.
      const int sa = a(i) > a(j) ? 1 : (a(i) < a(j) ? -1 : 0);
      const int sb = b(i) > b(j) ? 1 : (b(i) < b(j) ? -1 : 0);
      if (sa == 0 && sb == 0) continue;  // tied in both: excluded from all counts
      if (sa == 0) ++ties_a;
      else if (sb == 0) ++ties_b;
      else if (sa == sb) ++concordant;
      else ++discordant;
    }
  }
  const double pairs_a = static_cast<double>(concordant + discordant + ties_b);
  const double pairs_b = static_cast<double>(concordant + discordant + ties_a);
  const double denom = std::sqrt(pairs_a) * std::sqrt(pairs_b);
  if (!(denom > 0.0)) throw std::invalid_argument("kendall: tau undefined (all pairs tied)");
  return static_cast<double>(concordant - discordant) / denom;
}

Matrix correlation_matrix(const std::vector<std::vector<Vector>>& per_graph_scores) {
  if (per_graph_scores.empty()) throw std::invalid_argument("correlation_matrix: no graphs");
  const int m = static_cast<int>(per_graph_scores.front().size());
  if (m == 0) throw std::invalid_argument("correlation_matrix: no measures");
  for (const auto& row : per_graph_scores)
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument("correlation_matrix: ragged score lists");

  Matrix out = Matrix::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double acc = 0.0;
      int defined = 0;
      for (const auto& row : per_graph_scores) {
        try {
          acc += kendall_tau_b(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
          ++defined;
        } catch (const std::invalid_argument&) {
          // zero-variance graph for this pair: skipped
        }
      }
      if (defined == 0)
        throw std::runtime_error("correlation_matrix: tau undefined on every graph for a pair");
      out(i, j) = out(j, i) = acc / defined;
    }
  }
  return out;
}

NemenyiResult friedman_nemenyi(const BenchmarkTable& table, double alpha) {
  table.validate();
  const int k = table.k();
  const int n = table.graphs();
  if (k < 2) throw std::invalid_argument("friedman_nemenyi: need at least two measures");
  if (n < 2) throw std::invalid_argument("friedman_nemenyi: need at least two graphs");
  if (std::abs(alpha - 0.05) > 1e-12)
    throw std::invalid_argument("friedman_nemenyi: only alpha = 0.05 is supported");
  if (k > kQTableMax)
    throw std::invalid_argument("friedman_nemenyi: critical values embedded only for k <= 30");

  Vector mean_ranks = Vector::Zero(k);
  for (int g = 0; g < n; ++g)
    mean_ranks += midranks(table.auc.row(g).transpose());
  mean_ranks /= static_cast<double>(n);
  // Flip to the larger-is-better presentation (rank k+1-r).
  for (int c = 0; c < k; ++c) mean_ranks(c) = (k + 1) - mean_ranks(c);

  NemenyiResult res;
  res.mean_ranks = std::move(mean_ranks);
  res.alpha = alpha;
  res.critical_difference =
      kQTable005[k - kQTableMin] * std::sqrt(k * (k + 1) / (6.0 * n));
  return res;
}

BordaResult borda(const BenchmarkTable& table) {
  table.validate();
  const int k = table.k();
  const int n = table.graphs();
  Vector points = Vector::Zero(k);
  for (int g = 0; g < n; ++g) {
    // Best AUC has midrank 1 and earns k points; ties share the midpoint.
    const Vector r = midranks(table.auc.row(g).transpose());
    for (int c = 0; c < k; ++c) points(c) += static_cast<double>(k) - (r(c) - 1.0);
  }
  BordaResult res;
  res.points = points;
  res.order.resize(static_cast<std::size_t>(k));
  std::iota(res.order.begin(), res.order.end(), 0);
  std::sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    if (points(a) != points(b)) return points(a) > points(b);
    return table.measures[static_cast<std::size_t>(a)] <
           table.measures[static_cast<std::size_t>(b)];
  });
  return res;
}

std::vector<WardMerge> ward_cluster(const Matrix& corr) {
  const int m = static_cast<int>(corr.rows());
  if (m < 2 || corr.cols() != m)
    throw std::invalid_argument("ward_cluster: need a square matrix with >= 2 items");
  if ((corr - corr.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("ward_cluster: correlation matrix must be symmetric");

  // Work on squared distances (Lance-Williams form of Ward's criterion);
  // reported heights are the unsquared distances, scipy-style.
  const int slots = 2 * m - 1;
  Matrix d2 = Matrix::Zero(slots, slots);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double d = 1.0 - corr(i, j);
      d2(i, j) = d * d;
    }
  std::vector<int> size(static_cast<std::size_t>(slots), 0);
  std::vector<char> active(static_cast<std::size_t>(slots), 0);
  for (int i = 0; i < m; ++i) {
    size[static_cast<std::size_t>(i)] = 1;
    active[static_cast<std::size_t>(i)] = 1;
  }

  std::vector<WardMerge> merges;
  merges.reserve(static_cast<std::size_t>(m - 1));
  for (int step = 0; step < m - 1; ++step) {
    int bi = -1, bj = -1;
    double best = kInf;
    for (int i = 0; i < slots; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < slots; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        if (d2(i, j) < best) {
          best = d2(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    const int merged = m + step;
    merges.push_back({bi, bj, std::sqrt(std::max(0.0, best))});
    // Lance-Williams update for Ward linkage on squared distances.
    const double ni = size[static_cast<std::size_t>(bi)];
    const double nj = size[static_cast<std::size_t>(bj)];
    for (int t = 0; t < slots; ++t) {
      if (!active[static_cast<std::size_t>(t)] || t == bi || t == bj) continue;
      const double nt = size[static_cast<std::size_t>(t)];
      const double v = ((ni + nt) * d2(bi, t) + (nj + nt) * d2(bj, t) - nt * d2(bi, bj)) /
                       (ni + nj + nt);
      d2(merged, t) = v;
      d2(t, merged) = v;
    }
    active[static_cast<std::size_t>(bi)] = 0;
    active[static_cast<std::size_t>(bj)] = 0;
    active[static_cast<std::size_t>(merged)] = 1;
    size[static_cast<std::size_t>(merged)] = static_cast<int>(ni + nj);
  }
  return merges;
}

std::vector<SummaryRow> summarize(const BenchmarkTable& table) {
  table.validate();
  const int k = table.k();
  const int n = table.graphs();
  std::vector<SummaryRow> rows;
  rows.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    SummaryRow row;
    row.count = n;
    row.mean = table.auc.col(c).mean();
    if (n > 1) {
      const double ss = (table.auc.col(c).array() - row.mean).square().sum();
      row.stddev = std::sqrt(ss / (n - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bopcrit
