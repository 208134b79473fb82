#include "bopcrit/attack.hpp"

#include "bopcrit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bopcrit {

namespace {

// The random baseline re-draws at every (re)ranking; everything else is a
// pure function of the surviving graph.
Ranking compute_ranking(const Graph& current, const MeasureId& measure, const CostPolicy& policy,
                        std::uint64_t run_seed, int ranking_index, int jobs) {
  MeasureId effective = measure;
  if (measure.kind == MeasureId::Kind::BL)
    effective.seed = derive_seed(derive_seed(run_seed, measure.seed),
                                 static_cast<std::uint64_t>(ranking_index));
  const Vector scores = evaluate_measure(current, effective, policy, jobs);
  return rank_nodes(current, scores);
}

}  // namespace

AttackCurve run_attack(const Graph& g, const MeasureId& measure, const AttackStrategy& strategy,
                       const CostPolicy& policy, std::uint64_t seed, int jobs) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("run_attack requires at least two nodes");
  if (strategy.budget < 1) throw std::invalid_argument("attack budget must be >= 1");

  // Deletion steps (0-based) before which the ranking is recomputed.
  std::set<int> checkpoints;
  if (strategy.mode == AttackStrategy::Mode::PeriodicRanking) {
    for (int t = 0; t < strategy.budget; ++t)
      checkpoints.insert(static_cast<int>(
          std::ceil(static_cast<double>(n - 1) * t / strategy.budget)));
  } else {
    checkpoints.insert(0);
  }

  AttackCurve curve;
  curve.measure = measure;
  curve.strategy = strategy;
  curve.steps.reserve(static_cast<std::size_t>(n - 1));

  Graph current = g;
  std::vector<int> pending;  // labels still to delete, most critical first
  std::size_t cursor = 0;
  int ranking_index = 0;

  for (int k = 0; k < n - 1; ++k) {
    if (checkpoints.count(k) != 0) {
      try {
        const Ranking r = compute_ranking(current, measure, policy, seed, ranking_index, jobs);
        pending = r.order_labels;
        cursor = 0;
        ++ranking_index;
      } catch (const std::exception& e) {
        throw AttackError(k, e.what());
      }
    }
    if (cursor >= pending.size())
      throw AttackError(k, "ranking exhausted before all deletions were made");
    const int victim_label = pending[cursor++];
    int victim_index = -1;
    for (int i = 0; i < current.size(); ++i)
      if (current.label(i) == victim_label) {
        victim_index = i;
        break;
      }
    if (victim_index == -1) throw AttackError(k, "ranked label no longer present");

    current = current.delete_node(victim_index);
    const int bcc = current.connected_components().largest();
    AttackStep step;
    step.deleted_label = victim_label;
    step.bcc = bcc;
    step.rbcc = static_cast<double>(bcc) / (n - k - 1);
    curve.steps.push_back(step);
  }
  curve.auc = auc(curve);
  return curve;
}

double auc(const AttackCurve& curve) {
  if (curve.steps.empty()) throw std::invalid_argument("auc of an empty curve is undefined");
  double acc = 0.0;
  for (const AttackStep& s : curve.steps) acc += s.rbcc;
  return acc / static_cast<double>(curve.steps.size());
}

TuneResult tune_parameter(const Graph& g, const MeasureId& family, const std::vector<double>& grid,
                          const AttackStrategy& strategy, const CostPolicy& policy,
                          std::uint64_t seed, int jobs) {
  if (grid.empty()) throw std::invalid_argument("parameter grid must be non-empty");
  std::vector<double> ordered = grid;
  std::sort(ordered.begin(), ordered.end());

  TuneResult result;
  bool have_best = false;
  for (double value : ordered) {
    const MeasureId candidate = family.with_parameter(value);
    AttackCurve curve = run_attack(g, candidate, strategy, policy, seed, jobs);
    result.grid_auc.emplace_back(value, curve.auc);
    // Strictly-better keeps the smallest parameter on ties (grid is sorted).
    if (!have_best || curve.auc < result.curve.auc) {
      result.best = candidate;
      result.curve = std::move(curve);
      have_best = true;
    }
  }
  return result;
}

}  // namespace bopcrit
