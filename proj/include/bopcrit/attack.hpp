#pragma once

#include "bopcrit/graph.hpp"
#include "bopcrit/measures.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bopcrit {

struct AttackStrategy {
  enum class Mode { SingleRanking, PeriodicRanking };

  Mode mode = Mode::SingleRanking;
  int budget = 100;  // ranking recomputations for PeriodicRanking

  static AttackStrategy single() { return {Mode::SingleRanking, 100}; }
  static AttackStrategy periodic(int budget = 100) { return {Mode::PeriodicRanking, budget}; }
  std::string name() const {
    return mode == Mode::SingleRanking ? "single" : "periodic";
  }
};

struct AttackStep {
  int deleted_label = -1;
  int bcc = 0;
  double rbcc = 0.0;
};

struct AttackCurve {
  std::vector<AttackStep> steps;  // length n - 1
  double auc = 0.0;               // mean RBCC
  MeasureId measure;
  AttackStrategy strategy;
};

// A measure failed while an attack was in progress.
struct AttackError : std::runtime_error {
  AttackError(int step_index, const std::string& why)
      : std::runtime_error("attack aborted at step " + std::to_string(step_index) + ": " + why),
        step(step_index) {}
  int step;
};

// Deletes n-1 nodes in decreasing criticality order, recording BCC/RBCC after
// each deletion. SingleRanking ranks once on the intact graph;
// PeriodicRanking re-ranks the survivors at evenly spaced checkpoints
// ceil((n-1)t/budget), t = 0..budget-1. `seed` feeds the random baseline.
AttackCurve run_attack(const Graph& g, const MeasureId& measure, const AttackStrategy& strategy,
                       const CostPolicy& policy, std::uint64_t seed = 0, int jobs = 1);

// Mean RBCC of a non-empty curve.
double auc(const AttackCurve& curve);

struct TuneResult {
  MeasureId best;                // family with best parameter filled in
  AttackCurve curve;             // the attack run for the winning parameter
  std::vector<std::pair<double, double>> grid_auc;  // (parameter, auc)
};

// Runs the attack once per grid value and keeps the parameter with minimal
// AUC (ties go to the smaller parameter). Tuning always ranks the intact
// graph the same way run_attack does.
TuneResult tune_parameter(const Graph& g, const MeasureId& family, const std::vector<double>& grid,
                          const AttackStrategy& strategy, const CostPolicy& policy,
                          std::uint64_t seed = 0, int jobs = 1);

}  // namespace bopcrit
