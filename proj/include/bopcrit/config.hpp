#pragma once

#include "bopcrit/attack.hpp"
#include "bopcrit/graph.hpp"
#include "bopcrit/measures.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bopcrit {

// Benchmark experiment description; round-trips losslessly through the
// "key = value" on-disk form. Defaults are the desk-scale protocol.
struct ExperimentConfig {
  int count_ab = 30;
  int count_er = 30;
  int n_min = 30;
  int n_max = 150;
  std::vector<std::string> measures = {"ec",  "spb", "rwb", "est", "wk",  "kle", "wie",
                                       "kir", "kem", "shv", "bpc", "bpcf", "bl"};
  std::vector<double> theta_grid = {1e-6, 1e-3, 1e-2, 1e-1, 1, 10};
  std::vector<int> h_grid = {1, 2, 3, 4, 5, 6};
  std::string strategy = "single";       // "single" | "periodic"
  int budget = 100;                      // periodic re-ranking budget
  std::string cost_policy = "reciprocal";  // "reciprocal" | "unit"
  std::uint64_t seed = 1;
  int jobs = 0;  // 0 = hardware concurrency
  std::string out_dir = "bench_out";

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig load(const std::string& path);
  std::string emit() const;
  void validate() const;

  AttackStrategy attack_strategy() const;
  CostPolicy policy() const;
  std::vector<MeasureId> measure_ids() const;
  std::vector<double> grid_for(const MeasureId& id) const;

  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace bopcrit
