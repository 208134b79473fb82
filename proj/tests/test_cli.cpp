#include "bopcrit/commands.hpp"

#include "bopcrit/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace bopcrit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("bopcrit_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kToyEdgeList =
    "n=6\n"
    "0\t1\t1\n"
    "1\t2\t1\n"
    "1\t3\t1\n"
    "3\t4\t1\n"
    "1\t4\t1\n"
    "4\t5\t1\n"
    "0\t5\t1\n";

}  // namespace

TEST_CASE("cmd_generate writes graphs plus a manifest, deterministically") {
  TempDir dir("generate");
  GenerateOptions opts;
  opts.kind = "ab";
  opts.count = 3;
  opts.n = 30;
  opts.m = 2;
  opts.seed = 7;
  opts.out_dir = dir.str();
  auto files = cmd_generate(opts);
  REQUIRE(files.size() == 4);  // 3 graphs + manifest
  for (const auto& f : files) CHECK(fs::exists(f));

  Graph g0 = read_edge_list(files[0]);
  CHECK(g0.size() == 30);
  CHECK(g0.edge_count() == 3 + 2 * 27);

  const std::string manifest = slurp(files.back());
  CHECK(manifest.find("id,kind,n,param,seed") == 0);
  CHECK(manifest.find("ab") != std::string::npos);

  TempDir dir2("generate_again");
  opts.out_dir = dir2.str();
  auto files2 = cmd_generate(opts);
  for (std::size_t i = 0; i < files.size(); ++i)
    CHECK(slurp(files[i]) == slurp(files2[i]));
}

TEST_CASE("cmd_generate validates fixed-size parameters") {
  TempDir dir("generate_bad");
  GenerateOptions opts;
  opts.kind = "ab";
  opts.count = 1;
  opts.n = 30;
  opts.m = 9;  // outside {1..6}
  opts.out_dir = dir.str();
  CHECK_THROWS_AS(cmd_generate(opts), std::invalid_argument);

  opts.kind = "er";
  opts.m = 2;
  opts.p = 0.9;  // outside (0, 0.5]
  CHECK_THROWS_AS(cmd_generate(opts), std::invalid_argument);

  opts.kind = "weird";
  opts.p = 0.1;
  CHECK_THROWS_AS(cmd_generate(opts), std::invalid_argument);
}

TEST_CASE("cmd_measure emits a ranked CSV") {
  TempDir dir("measure");
  const fs::path graph_path = dir.path / "toy.tsv";
  write_text(graph_path, kToyEdgeList);

  MeasureOptions opts;
  opts.graph_path = graph_path.string();
  opts.measure = "bpc:theta=1";
  std::ostringstream console;
  cmd_measure(opts, console);
  const std::string out = console.str();
  CHECK(out.find("label,score") == 0);
  // Highest-criticality node (0-based label 1 in this file) leads.
  CHECK(out.find("label,score\n1,") == 0);

  // Same command into a file.
  const fs::path csv = dir.path / "scores.csv";
  opts.out_path = csv.string();
  std::ostringstream quiet;
  cmd_measure(opts, quiet);
  CHECK(slurp(csv) == out);

  opts.measure = "wk:h=0";
  CHECK_THROWS_AS(cmd_measure(opts, quiet), std::invalid_argument);
}

TEST_CASE("cmd_attack writes curve and summary, tuning gridded measures") {
  TempDir dir("attack");
  const fs::path graph_path = dir.path / "toy.tsv";
  write_text(graph_path, kToyEdgeList);

  AttackOptions opts;
  opts.graph_path = graph_path.string();
  opts.measure = "bpcf";  // no explicit theta -> tuned over the default grid
  opts.out_dir = dir.str();
  std::ostringstream console;
  cmd_attack(opts, console);

  const std::string curve = slurp(dir.path / "attack_curve.csv");
  CHECK(curve.find("step,deleted_label,bcc,rbcc") == 0);

  const std::string summary = slurp(dir.path / "attack_summary.json");
  CHECK(summary.find("\"tuned\": true") != std::string::npos);
  CHECK(summary.find("\"parameter\"") != std::string::npos);
  CHECK(summary.find("\"grid_auc\"") != std::string::npos);

  // Re-running produces byte-identical outputs.
  TempDir dir2("attack_again");
  opts.out_dir = dir2.str();
  std::ostringstream console2;
  cmd_attack(opts, console2);
  CHECK(slurp(dir2.path / "attack_curve.csv") == curve);
  CHECK(slurp(dir2.path / "attack_summary.json") == summary);

  // Explicit parameter skips tuning.
  AttackOptions fixed = opts;
  fixed.measure = "bpcf:theta=1";
  TempDir dir3("attack_fixed");
  fixed.out_dir = dir3.str();
  std::ostringstream console3;
  cmd_attack(fixed, console3);
  const std::string fixed_summary = slurp(dir3.path / "attack_summary.json");
  CHECK(fixed_summary.find("\"tuned\": false") != std::string::npos);
}

TEST_CASE("cmd_benchmark runs the small pipeline end to end") {
  TempDir dir("bench");
  ExperimentConfig cfg;
  cfg.count_ab = 3;
  cfg.count_er = 2;
  cfg.n_min = 10;
  cfg.n_max = 16;
  cfg.measures = {"ec", "wk", "bl"};
  cfg.h_grid = {1, 2};
  cfg.seed = 5;
  cfg.jobs = 1;
  cfg.out_dir = dir.str();

  std::ostringstream console;
  cmd_benchmark(cfg, console);

  for (const char* name : {"config_used.cfg", "manifest.csv", "auc_table.csv",
                           "tuned_params.csv", "summary.csv", "nemenyi.csv", "borda.csv",
                           "correlation_matrix.csv", "ward_merges.csv", "report.json"}) {
    CHECK(fs::exists(dir.path / name));
  }

  const std::string table = slurp(dir.path / "auc_table.csv");
  CHECK(table.find("graph_id") == 0);
  // Header + 5 graph rows.
  CHECK(std::count(table.begin(), table.end(), '\n') == 6);

  const std::string nemenyi = slurp(dir.path / "nemenyi.csv");
  CHECK(nemenyi.find("measure,mean_rank,critical_difference,alpha") == 0);

  // Determinism: byte-identical rerun.
  TempDir dir2("bench_again");
  ExperimentConfig cfg2 = cfg;
  cfg2.out_dir = dir2.str();
  std::ostringstream console2;
  cmd_benchmark(cfg2, console2);
  CHECK(slurp(dir2.path / "auc_table.csv") == table);
  CHECK(slurp(dir2.path / "borda.csv") == slurp(dir.path / "borda.csv"));
}

TEST_CASE("cmd_correlate emits a correlation matrix and merges") {
  TempDir dir("correlate");
  CorrelateOptions opts;
  opts.count_ab = 2;
  opts.count_er = 2;
  opts.n_min = 10;
  opts.n_max = 14;
  opts.measures = {"ec", "est", "kle"};
  opts.seed = 3;
  opts.jobs = 1;
  opts.out_dir = dir.str();
  std::ostringstream console;
  cmd_correlate(opts, console);
  CHECK(fs::exists(dir.path / "correlation_matrix.csv"));
  CHECK(fs::exists(dir.path / "ward_merges.csv"));
  const std::string corr = slurp(dir.path / "correlation_matrix.csv");
  CHECK(corr.find("measure") == 0);
  CHECK(corr.find("ec") != std::string::npos);
}

TEST_CASE("cmd_complexity reports timings for tiny sizes") {
  TempDir dir("complexity");
  ComplexityOptions opts;
  opts.sizes = {20, 30};
  opts.reps = 1;
  opts.out_path = (dir.path / "timing.csv").string();
  std::ostringstream console;
  cmd_complexity(opts, console);
  const std::string csv = slurp(dir.path / "timing.csv");
  CHECK(csv.find("n,t_bpc,t_bpcf,ratio") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  ComplexityOptions bad = opts;
  bad.sizes = {30, 20};
  CHECK_THROWS_AS(cmd_complexity(bad, console), std::invalid_argument);
}
