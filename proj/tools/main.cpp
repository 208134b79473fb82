#include "bopcrit/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

namespace {

struct GlobalFlags {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  bool out_set = false;
  int jobs = 0;
  bool jobs_set = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bopcrit: bag-of-paths node criticality toolkit"};
  app.require_subcommand(1);

  GlobalFlags global;
  app.add_option("--seed", global.seed, "base random seed")
      ->each([&](const std::string&) { global.seed_set = true; });
  app.add_option("--out", global.out, "output file or directory")
      ->each([&](const std::string&) { global.out_set = true; });
  app.add_option("--jobs", global.jobs, "worker threads (0 = hardware)")
      ->each([&](const std::string&) { global.jobs_set = true; });
  // Let the global flags appear after the subcommand as well.
  app.fallthrough();

  // generate
  bopcrit::GenerateOptions gen;
  CLI::App* c_gen = app.add_subcommand("generate", "write random graphs as edge lists");
  c_gen->add_option("--kind", gen.kind, "graph model: er | ab");
  c_gen->add_option("--count", gen.count, "number of graphs");
  c_gen->add_option("--n", gen.n, "fixed node count (omit to draw from --n-min/--n-max)");
  c_gen->add_option("--n-min", gen.n_min, "minimum node count");
  c_gen->add_option("--n-max", gen.n_max, "maximum node count");
  c_gen->add_option("--p", gen.p, "ER edge probability in (0, 0.5]");
  c_gen->add_option("--m", gen.m, "AB attachment count in {1..6}");

  // measure
  bopcrit::MeasureOptions meas;
  CLI::App* c_meas = app.add_subcommand("measure", "score all nodes of one graph");
  c_meas->add_option("graph", meas.graph_path, "edge-list file")->required();
  c_meas->add_option("--measure", meas.measure, "measure id, e.g. ec | wk:h=2 | bpc:theta=1");
  c_meas->add_option("--cost-policy", meas.cost_policy, "reciprocal | unit");

  // attack
  bopcrit::AttackOptions atk;
  CLI::App* c_atk = app.add_subcommand("attack", "simulate a node-deletion attack");
  c_atk->add_option("graph", atk.graph_path, "edge-list file")->required();
  c_atk->add_option("--measure", atk.measure, "measure id (family alone tunes over its grid)");
  c_atk->add_option("--strategy", atk.strategy, "single | periodic");
  c_atk->add_option("--budget", atk.budget, "re-ranking budget for periodic");
  c_atk->add_option("--cost-policy", atk.cost_policy, "reciprocal | unit");

  // benchmark
  std::string bench_config;
  bopcrit::ExperimentConfig bench;
  CLI::App* c_bench = app.add_subcommand("benchmark", "full population benchmark");
  c_bench->add_option("--config", bench_config, "experiment config file (defaults otherwise)");
  c_bench->add_option("--count-ab", bench.count_ab, "AB graph count");
  c_bench->add_option("--count-er", bench.count_er, "ER graph count");
  c_bench->add_option("--n-min", bench.n_min, "minimum node count");
  c_bench->add_option("--n-max", bench.n_max, "maximum node count");
  c_bench->add_option("--strategy", bench.strategy, "single | periodic");
  c_bench->add_option("--budget", bench.budget, "re-ranking budget for periodic");

  // correlate
  bopcrit::CorrelateOptions corr;
  CLI::App* c_corr = app.add_subcommand("correlate", "mean Kendall correlations + clustering");
  c_corr->add_option("--count-ab", corr.count_ab, "AB graph count");
  c_corr->add_option("--count-er", corr.count_er, "ER graph count");
  c_corr->add_option("--n-min", corr.n_min, "minimum node count");
  c_corr->add_option("--n-max", corr.n_max, "maximum node count");
  c_corr->add_option("--measures", corr.measures, "measure ids (explicit parameters)");
  c_corr->add_option("--cost-policy", corr.cost_policy, "reciprocal | unit");

  // complexity
  bopcrit::ComplexityOptions cplx;
  CLI::App* c_cplx = app.add_subcommand("complexity", "time bpc vs bpcf");
  c_cplx->add_option("--sizes", cplx.sizes, "graph sizes, ascending")->delimiter(',');
  c_cplx->add_option("--theta", cplx.theta, "inverse temperature");
  c_cplx->add_option("--p", cplx.p, "ER edge probability");
  c_cplx->add_option("--reps", cplx.reps, "timing repetitions (min taken)");
  c_cplx->add_flag("--large", cplx.include_large, "also time the long n=3000 point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_gen) {
      if (c_gen->count("--n") == 0 && (c_gen->count("--m") > 0 || c_gen->count("--p") > 0))
        throw std::invalid_argument(
            "generate: --m/--p require a fixed --n; ranged --n-min/--n-max draws parameters "
            "per graph");
      if (global.seed_set) gen.seed = global.seed;
      if (global.out_set) gen.out_dir = global.out;
      bopcrit::cmd_generate(gen);
      std::cout << gen.count << " graph(s) + manifest written to " << gen.out_dir << "\n";
    } else if (*c_meas) {
      if (global.seed_set) meas.seed = global.seed;
      if (global.out_set) meas.out_path = global.out;
      if (global.jobs_set) meas.jobs = global.jobs;
      bopcrit::cmd_measure(meas, std::cout);
    } else if (*c_atk) {
      if (global.seed_set) atk.seed = global.seed;
      if (global.out_set) atk.out_dir = global.out;
      if (global.jobs_set) atk.jobs = global.jobs;
      bopcrit::cmd_attack(atk, std::cout);
    } else if (*c_bench) {
      if (!bench_config.empty()) {
        bopcrit::ExperimentConfig loaded = bopcrit::ExperimentConfig::load(bench_config);
        // Command-line values override file values only when given.
        for (const CLI::Option* opt : c_bench->get_options())
          if (opt->count() > 0 && opt->get_name() != "--config") {
            const std::string name = opt->get_name();
            if (name == "--count-ab") loaded.count_ab = bench.count_ab;
            else if (name == "--count-er") loaded.count_er = bench.count_er;
            else if (name == "--n-min") loaded.n_min = bench.n_min;
            else if (name == "--n-max") loaded.n_max = bench.n_max;
            else if (name == "--strategy") loaded.strategy = bench.strategy;
            else if (name == "--budget") loaded.budget = bench.budget;
          }
        bench = loaded;
      }
      if (global.seed_set) bench.seed = global.seed;
      if (global.out_set) bench.out_dir = global.out;
      if (global.jobs_set) bench.jobs = global.jobs;
      bopcrit::cmd_benchmark(bench, std::cout);
    } else if (*c_corr) {
      if (global.seed_set) corr.seed = global.seed;
      if (global.out_set) corr.out_dir = global.out;
      if (global.jobs_set) corr.jobs = global.jobs;
      bopcrit::cmd_correlate(corr, std::cout);
    } else if (*c_cplx) {
      if (global.seed_set) cplx.seed = global.seed;
      if (global.out_set) cplx.out_path = global.out;
      bopcrit::cmd_complexity(cplx, std::cout);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
