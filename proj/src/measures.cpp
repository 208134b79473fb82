#include "bopcrit/measures.hpp"

#include "bopcrit/linalg.hpp"
#include "bopcrit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace bopcrit {

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * (1.0 + std::min(std::abs(a), std::abs(b)));
}

// Dijkstra from one source over the dense cost matrix (entries +inf off
// edges). Returns distances; unreachable stays +inf.
Vector dijkstra(const Matrix& cost, int source) {
  const int n = static_cast<int>(cost.rows());
  Vector dist = Vector::Constant(n, kInf);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  dist(source) = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    double best = kInf;
    for (int i = 0; i < n; ++i)
      if (!done[static_cast<std::size_t>(i)] && dist(i) < best) {
        best = dist(i);
        u = i;
      }
    if (u == -1) break;
    done[static_cast<std::size_t>(u)] = 1;
    for (int v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] || !std::isfinite(cost(u, v))) continue;
      const double cand = dist(u) + cost(u, v);
      if (cand < dist(v)) dist(v) = cand;
    }
  }
  return dist;
}

Matrix all_pairs_distances(const Graph& g, const CostPolicy& policy) {
  const Matrix cost = g.cost_matrix(policy);
  const int n = g.size();
  Matrix d(n, n);
  for (int s = 0; s < n; ++s) d.row(s) = dijkstra(cost, s).transpose();
  return d;
}

// Half-sum of pairwise distances with the unreachable-pair penalty: each
// unreachable ordered pair counts n * (largest finite distance, or 1 if none).
double penalized_half_sum(const Matrix& d) {
  const int n = static_cast<int>(d.rows());
  double max_finite = 0.0;
  bool any_finite = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !std::isfinite(d(i, j))) continue;
      any_finite = true;
      max_finite = std::max(max_finite, d(i, j));
    }
  const double penalty = n * (any_finite ? max_finite : 1.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      total += std::isfinite(d(i, j)) ? d(i, j) : penalty;
    }
  return total / 2.0;
}

double component_kemeny(const Graph& sub) {
  const int m = sub.size();
  if (m < 2) return 0.0;
  Vector dsqrt(m);
  for (int i = 0; i < m; ++i) dsqrt(i) = std::sqrt(sub.degree(i));
  Matrix s(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s(i, j) = sub.weight(i, j) / (dsqrt(i) * dsqrt(j));
  const EigenDecomposition dec = sym_eigen(s);
  if (std::abs(dec.eigenvalues(m - 1) - 1.0) > 1e-8)
    throw std::runtime_error("kemeny: Perron eigenvalue deviates from 1");
  double k = 0.0;
  for (int i = 0; i < m - 1; ++i) k += 1.0 / (1.0 - dec.eigenvalues(i));
  return k;
}

double global_value(const Graph& g, GlobalKind kind, const CostPolicy& policy) {
  switch (kind) {
    case GlobalKind::Wiener: return wiener(g, policy);
    case GlobalKind::Kirchhoff: return kirchhoff(g);
    case GlobalKind::Kemeny: return kemeny(g);
    case GlobalKind::Shield: return shield(g);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Vector ec(const Graph& g) {
  Vector out(g.size());
  for (int i = 0; i < g.size(); ++i) out(i) = g.degree(i);
  return out;
}

Vector spb(const Graph& g, const CostPolicy& policy) {
  const int n = g.size();
  const Matrix cost = g.cost_matrix(policy);
  Vector score = Vector::Zero(n);
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<double> sigma(static_cast<std::size_t>(n));
  std::vector<double> delta(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n));
  std::vector<int> settled;

  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(done.begin(), done.end(), 0);
    for (auto& p : preds) p.clear();
    settled.clear();
    dist[static_cast<std::size_t>(s)] = 0.0;
    sigma[static_cast<std::size_t>(s)] = 1.0;

    for (int round = 0; round < n; ++round) {
      int u = -1;
      double best = kInf;
      for (int i = 0; i < n; ++i)
        if (!done[static_cast<std::size_t>(i)] && dist[static_cast<std::size_t>(i)] < best) {
          best = dist[static_cast<std::size_t>(i)];
          u = i;
        }
      if (u == -1) break;
      done[static_cast<std::size_t>(u)] = 1;
      settled.push_back(u);
      for (int v = 0; v < n; ++v) {
        if (done[static_cast<std::size_t>(v)] || !std::isfinite(cost(u, v))) continue;
        const double cand = dist[static_cast<std::size_t>(u)] + cost(u, v);
        if (nearly_equal(cand, dist[static_cast<std::size_t>(v)])) {
          sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
          preds[static_cast<std::size_t>(v)].push_back(u);
        } else if (cand < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = cand;
          sigma[static_cast<std::size_t>(v)] = sigma[static_cast<std::size_t>(u)];
          preds[static_cast<std::size_t>(v)] = {u};
        }
      }
    }

    // Dependency accumulation in reverse settling order (Brandes).
    for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
      const int w = *it;
      for (int u : preds[static_cast<std::size_t>(w)])
        delta[static_cast<std::size_t>(u)] += sigma[static_cast<std::size_t>(u)] /
                                              sigma[static_cast<std::size_t>(w)] *
                                              (1.0 + delta[static_cast<std::size_t>(w)]);
      if (w != s) score(w) += delta[static_cast<std::size_t>(w)];
    }
  }
  // Each source pass covers targets once; ordered pairs double every
  // unordered contribution, matching the double-sum definition.
  return score;
}

Vector rwb(const Graph& g) {
  Vector score = Vector::Zero(g.size());
  for (const std::vector<int>& group : g.connected_components().members()) {
    const int m = static_cast<int>(group.size());
    if (m < 2) continue;
    const Graph sub = g.induced(group);
    const Matrix lp = laplacian_pseudoinverse(sub.laplacian());
    const std::vector<Edge> edges = sub.edge_list();
    Vector local = Vector::Zero(m);
    for (int s = 0; s < m; ++s) {
      for (int t = s + 1; t < m; ++t) {
        const Vector u = lp.col(s) - lp.col(t);
        for (const Edge& e : edges) {
          const double flow = e.weight * std::abs(u(e.i) - u(e.j));
          if (e.i != s && e.i != t) local(e.i) += 0.5 * flow;
          if (e.j != s && e.j != t) local(e.j) += 0.5 * flow;
        }
      }
    }
    for (int a = 0; a < m; ++a) score(group[static_cast<std::size_t>(a)]) = local(a);
  }
  return score;
}

Vector est(const Graph& g) { return expm_diag(g.weights()); }

Vector wk(const Graph& g, int h) {
  if (h < 1) throw std::invalid_argument("wk requires h >= 1");
  const int n = g.size();
  Vector score = Vector::Zero(n);
  // Distinct neighborhoods repeat heavily once h reaches the component
  // diameter; memoize lambda_2 by member set.
  std::map<std::vector<int>, double> lambda2_cache;
  for (int j = 0; j < n; ++j) {
    const double d = g.degree(j);
    if (d <= 0.0) continue;  // isolated node
    const Graph nb = g.h_neighborhood(j, h);
    std::vector<int> key(nb.labels());
    auto it = lambda2_cache.find(key);
    if (it == lambda2_cache.end())
      it = lambda2_cache.emplace(std::move(key), algebraic_connectivity(nb.laplacian())).first;
    score(j) = it->second / std::max(std::log2(d), 1.0);
  }
  return score;
}

Vector kle(const Graph& g) {
  Vector score = Vector::Zero(g.size());
  for (const std::vector<int>& group : g.connected_components().members()) {
    const int m = static_cast<int>(group.size());
    if (m < 2) continue;
    const Graph sub = g.induced(group);
    const Matrix lp = laplacian_pseudoinverse(sub.laplacian());
    const Matrix sq = lp * lp;
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        if (sub.weight(i, j) <= 0.0) continue;
        acc += sub.weight(i, j) * (sq(i, i) + sq(j, j) - 2.0 * sq(i, j));
      }
      score(group[static_cast<std::size_t>(j)]) = acc;
    }
  }
  return score;
}

double wiener(const Graph& g, const CostPolicy& policy) {
  if (g.size() < 2) return 0.0;
  return penalized_half_sum(all_pairs_distances(g, policy));
}

double kirchhoff(const Graph& g) {
  const int n = g.size();
  if (n < 2) return 0.0;
  Matrix r = Matrix::Constant(n, n, kInf);
  for (int i = 0; i < n; ++i) r(i, i) = 0.0;
  for (const std::vector<int>& group : g.connected_components().members()) {
    const int m = static_cast<int>(group.size());
    if (m < 2) continue;
    const Graph sub = g.induced(group);
    const Matrix lp = laplacian_pseudoinverse(sub.laplacian());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        r(group[static_cast<std::size_t>(a)], group[static_cast<std::size_t>(b)]) =
            lp(a, a) + lp(b, b) - 2.0 * lp(a, b);
  }
  return penalized_half_sum(r);
}

double kemeny(const Graph& g) {
  const int n = g.size();
  if (n == 0) return 0.0;
  double acc = 0.0;
  for (const std::vector<int>& group : g.connected_components().members()) {
    const double kc = component_kemeny(g.induced(group));
    acc += (static_cast<double>(group.size()) / n) * kc;
  }
  return acc;
}

double shield(const Graph& g) {
  if (g.size() == 0) return 0.0;
  return dominant_eigenvalue(g.weights());
}

Vector derived_criticality(const Graph& g, GlobalKind kind, const CostPolicy& policy) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("derived criticality needs at least two nodes");
  const int base_components = g.connected_components().count();
  const double base = global_value(g, kind, policy);
  Vector score(n);
  for (int j = 0; j < n; ++j) {
    const Graph sub = g.delete_node(j);
    if (sub.connected_components().count() > base_components) {
      score(j) = kInf;  // disconnecting deletion: maximal criticality sentinel
    } else {
      score(j) = std::abs(global_value(sub, kind, policy) - base);
    }
  }
  return score;
}

Vector baseline_random(const Graph& g, std::uint64_t seed) {
  const int n = g.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_seed(seed, 0xb1u));
  for (int i = n - 1; i > 0; --i) {
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(k)]);
  }
  Vector score(n);
  for (int pos = 0; pos < n; ++pos) score(perm[static_cast<std::size_t>(pos)]) = n - pos;
  return score;
}

Vector stationary_distribution(const Graph& g) {
  Vector pi = Vector::Zero(g.size());
  for (const std::vector<int>& group : g.connected_components().members()) {
    if (group.size() == 1) {
      pi(group[0]) = 1.0;
      continue;
    }
    double total = 0.0;
    for (int i : group) total += g.degree(i);
    for (int i : group) pi(i) = g.degree(i) / total;
  }
  return pi;
}

// --- MeasureId ---------------------------------------------------------------

namespace {

const std::vector<std::pair<std::string, MeasureId::Kind>>& family_table() {
  static const std::vector<std::pair<std::string, MeasureId::Kind>> table = {
      {"ec", MeasureId::Kind::EC},   {"spb", MeasureId::Kind::SPB},
      {"rwb", MeasureId::Kind::RWB}, {"est", MeasureId::Kind::EST},
      {"wk", MeasureId::Kind::WK},   {"kle", MeasureId::Kind::KLE},
      {"wie", MeasureId::Kind::WIE}, {"kir", MeasureId::Kind::KIR},
      {"kem", MeasureId::Kind::KEM}, {"shv", MeasureId::Kind::SHV},
      {"bpc", MeasureId::Kind::BPC}, {"bpcf", MeasureId::Kind::BPCF},
      {"bl", MeasureId::Kind::BL}};
  return table;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

MeasureId MeasureId::parse(const std::string& text) {
  const std::string spec = trim(text);
  const auto colon = spec.find(':');
  const std::string fam = trim(spec.substr(0, colon));

  MeasureId id;
  bool found = false;
  for (const auto& [name, kind] : family_table())
    if (name == fam) {
      id.kind = kind;
      found = true;
      break;
    }
  if (!found) throw std::invalid_argument("unknown measure '" + fam + "'");

  if (colon == std::string::npos) return id;

  std::stringstream params(spec.substr(colon + 1));
  std::string item;
  while (std::getline(params, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed measure parameter '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("malformed measure parameter '" + item + "'");

    if (key == "theta" && (id.kind == Kind::BPC || id.kind == Kind::BPCF)) {
      std::size_t used = 0;
      id.theta = std::stod(value, &used);
      if (used != value.size() || !(id.theta > 0.0) || !std::isfinite(id.theta))
        throw std::invalid_argument("theta must be a positive number");
      id.explicit_param = true;
    } else if (key == "variant" && (id.kind == Kind::BPC || id.kind == Kind::BPCF)) {
      if (value == "standard") id.variant = BopVariant::Standard;
      else if (value == "entropy") id.variant = BopVariant::EntropyConstraint;
      else throw std::invalid_argument("variant must be 'standard' or 'entropy'");
    } else if (key == "order" && (id.kind == Kind::BPC || id.kind == Kind::BPCF)) {
      if (value == "deleted-first") id.order = KlOrder::DeletedFirst;
      else if (value == "restricted-first") id.order = KlOrder::RestrictedFirst;
      else throw std::invalid_argument("order must be 'deleted-first' or 'restricted-first'");
    } else if (key == "h" && id.kind == Kind::WK) {
      std::size_t used = 0;
      const long hv = std::stol(value, &used);
      if (used != value.size() || hv < 1 || hv > 1000)
        throw std::invalid_argument("h must be an integer >= 1");
      id.h = static_cast<int>(hv);
      id.explicit_param = true;
    } else if (key == "seed" && id.kind == Kind::BL) {
      std::size_t used = 0;
      const unsigned long long sv = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument("seed must be an integer");
      id.seed = static_cast<std::uint64_t>(sv);
      id.explicit_param = true;
    } else {
      throw std::invalid_argument("unknown parameter '" + key + "' for measure '" + fam + "'");
    }
  }
  return id;
}

std::string MeasureId::family() const {
  for (const auto& [name, kind] : family_table())
    if (kind == this->kind) return name;
  throw std::logic_error("unreachable");
}

std::string MeasureId::to_string() const {
  std::string out = family();
  std::vector<std::string> params;
  if (kind == Kind::BPC || kind == Kind::BPCF) {
    if (explicit_param) params.push_back("theta=" + format_double(theta));
    if (variant == BopVariant::EntropyConstraint) params.emplace_back("variant=entropy");
    if (order == KlOrder::RestrictedFirst) params.emplace_back("order=restricted-first");
  } else if (kind == Kind::WK) {
    if (explicit_param) params.push_back("h=" + std::to_string(h));
  } else if (kind == Kind::BL) {
    if (explicit_param) params.push_back("seed=" + std::to_string(seed));
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    out += (i == 0 ? ":" : ",") + params[i];
  return out;
}

bool MeasureId::has_grid() const {
  return kind == Kind::WK || kind == Kind::BPC || kind == Kind::BPCF;
}

std::vector<double> MeasureId::default_grid() const {
  if (kind == Kind::WK) return {1, 2, 3, 4, 5, 6};
  if (kind == Kind::BPC || kind == Kind::BPCF) return {1e-6, 1e-3, 1e-2, 1e-1, 1, 10};
  throw std::invalid_argument("measure '" + family() + "' has no parameter grid");
}

MeasureId MeasureId::with_parameter(double value) const {
  MeasureId out = *this;
  if (kind == Kind::WK) {
    out.h = static_cast<int>(value);
    if (out.h < 1 || static_cast<double>(out.h) != value)
      throw std::invalid_argument("wk parameter must be an integer >= 1");
  } else if (kind == Kind::BPC || kind == Kind::BPCF) {
    if (!(value > 0.0)) throw std::invalid_argument("theta must be positive");
    out.theta = value;
  } else {
    throw std::invalid_argument("measure '" + family() + "' has no parameter grid");
  }
  out.explicit_param = true;
  return out;
}

Vector evaluate_measure(const Graph& g, const MeasureId& id, const CostPolicy& policy, int jobs) {
  switch (id.kind) {
    case MeasureId::Kind::EC: return ec(g);
    case MeasureId::Kind::SPB: return spb(g, policy);
    case MeasureId::Kind::RWB: return rwb(g);
    case MeasureId::Kind::EST: return est(g);
    case MeasureId::Kind::WK: return wk(g, id.h);
    case MeasureId::Kind::KLE: return kle(g);
    case MeasureId::Kind::WIE: return derived_criticality(g, GlobalKind::Wiener, policy);
    case MeasureId::Kind::KIR: return derived_criticality(g, GlobalKind::Kirchhoff, policy);
    case MeasureId::Kind::KEM: return derived_criticality(g, GlobalKind::Kemeny, policy);
    case MeasureId::Kind::SHV: return derived_criticality(g, GlobalKind::Shield, policy);
    case MeasureId::Kind::BPC:
      return bpc(g, policy, id.theta, id.variant, id.order, jobs).scores;
    case MeasureId::Kind::BPCF:
      return bpcf(g, policy, id.theta, id.variant, id.order, jobs).scores;
    case MeasureId::Kind::BL: return baseline_random(g, id.seed);
  }
  throw std::logic_error("unreachable");
}

Ranking rank_nodes(const Graph& g, const Vector& scores) {
  const int n = g.size();
  if (static_cast<int>(scores.size()) != n)
    throw std::invalid_argument("score vector length must match node count");
  for (int i = 0; i < n; ++i)
    if (std::isnan(scores(i))) throw std::invalid_argument("scores must not contain NaN");

  Ranking r;
  r.scores = scores;
  r.order.resize(static_cast<std::size_t>(n));
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](int a, int b) {
    if (scores(a) != scores(b)) return scores(a) > scores(b);
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return g.label(a) < g.label(b);
  });
  r.order_labels.reserve(static_cast<std::size_t>(n));
  for (int idx : r.order) r.order_labels.push_back(g.label(idx));
  for (int k = 0; k + 1 < n; ++k) {
    const int a = r.order[static_cast<std::size_t>(k)];
    const int b = r.order[static_cast<std::size_t>(k + 1)];
    if (scores(a) != scores(b)) r.trace.push_back(Ranking::TieRule::Score);
    else if (g.degree(a) != g.degree(b)) r.trace.push_back(Ranking::TieRule::Degree);
    else r.trace.push_back(Ranking::TieRule::Label);
  }
  return r;
}

}  // namespace bopcrit
