#pragma once

#include "bopcrit/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bopcrit {

struct GenerateOptions {
  std::string kind = "er";  // "er" | "ab"
  int count = 1;
  int n = 0;               // fixed size; 0 means draw from [n_min, n_max]
  int n_min = 30;
  int n_max = 150;
  double p = 0.1;          // ER edge probability (fixed-size mode)
  int m = 2;               // AB attachment count (fixed-size mode)
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

// Writes one edge-list file per graph plus manifest.csv; returns the paths
// written (manifest last).
std::vector<std::string> cmd_generate(const GenerateOptions& opts);

struct MeasureOptions {
  std::string graph_path;
  std::string measure = "ec";
  std::string cost_policy = "reciprocal";
  std::string out_path;  // empty = stdout
  std::uint64_t seed = 0;
  int jobs = 1;
};

void cmd_measure(const MeasureOptions& opts, std::ostream& console);

struct AttackOptions {
  std::string graph_path;
  std::string measure = "ec";
  std::string strategy = "single";  // "single" | "periodic"
  int budget = 100;
  std::string cost_policy = "reciprocal";
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Runs one attack (tuning first when the measure has a grid and no explicit
// parameter); writes attack_curve.csv and attack_summary.json.
void cmd_attack(const AttackOptions& opts, std::ostream& console);

// Full pipeline: population -> tune -> attack -> tables; writes the table,
// report, correlation, and clustering files into cfg.out_dir.
void cmd_benchmark(const ExperimentConfig& cfg, std::ostream& console);

struct CorrelateOptions {
  int count_ab = 20;
  int count_er = 20;
  int n_min = 30;
  int n_max = 150;
  std::vector<std::string> measures;  // defaults filled in when empty
  std::string cost_policy = "reciprocal";
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out_dir = ".";
};

// Mean Kendall correlation matrix over a fresh population plus Ward merges.
void cmd_correlate(const CorrelateOptions& opts, std::ostream& console);

struct ComplexityOptions {
  std::vector<int> sizes = {100, 200, 300, 400, 500};
  double theta = 1.0;
  double p = 0.1;
  int reps = 3;
  std::uint64_t seed = 1;
  std::string out_path;     // empty = stdout only
  bool include_large = false;  // appends the long n=3000 point
};

// Times bpc vs bpcf on ER graphs; emits CSV n,t_bpc,t_bpcf,ratio.
void cmd_complexity(const ComplexityOptions& opts, std::ostream& console);

}  // namespace bopcrit
