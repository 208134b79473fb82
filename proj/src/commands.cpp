#include "bopcrit/commands.hpp"

#include "bopcrit/attack.hpp"
#include "bopcrit/bop.hpp"
#include "bopcrit/generators.hpp"
#include "bopcrit/io.hpp"
#include "bopcrit/parallel.hpp"
#include "bopcrit/rng.hpp"
#include "bopcrit/stats.hpp"

#include <json.hpp>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace bopcrit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string graph_file_name(const std::string& kind, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%03d.tsv", kind.c_str(), index);
  return buf;
}

double json_safe(double v) { return std::isfinite(v) ? v : 0.0; }

// Effective seed for a BL score evaluation outside run_attack.
MeasureId bl_resolved(const MeasureId& id, std::uint64_t run_seed) {
  MeasureId out = id;
  if (id.kind == MeasureId::Kind::BL)
    out.seed = derive_seed(derive_seed(run_seed, id.seed), 0);
  return out;
}

struct PopulationFiles {
  std::vector<PopulationEntry> entries;
  std::vector<std::string> ids;
};

PopulationFiles build_population(int count_ab, int count_er, int n_min, int n_max,
                                 std::uint64_t seed) {
  PopulationFiles pop;
  auto ab = sample_population(count_ab, GeneratorSpec::Kind::AB, n_min, n_max,
                              derive_seed(seed, 0xabu));
  auto er = sample_population(count_er, GeneratorSpec::Kind::ER, n_min, n_max,
                              derive_seed(seed, 0xe5u));
  for (int i = 0; i < count_ab; ++i) {
    pop.ids.push_back("ab_" + std::to_string(i));
    pop.entries.push_back(std::move(ab[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < count_er; ++i) {
    pop.ids.push_back("er_" + std::to_string(i));
    pop.entries.push_back(std::move(er[static_cast<std::size_t>(i)]));
  }
  return pop;
}

void write_manifest(const fs::path& path, const std::vector<std::string>& ids,
                    const std::vector<PopulationEntry>& entries) {
  std::ofstream out = open_out(path);
  out << "id,kind,n,param,seed\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const GeneratorSpec& s = entries[i].spec;
    out << ids[i] << "," << s.kind_name() << "," << s.n << "," << format_double(s.param()) << ","
        << s.seed << "\n";
  }
}

void write_correlation_csv(const fs::path& path, const std::vector<std::string>& names,
                           const Matrix& corr) {
  std::ofstream out = open_out(path);
  out << "measure";
  for (const std::string& name : names) out << "," << csv_cell(name);
  out << "\n";
  for (int i = 0; i < corr.rows(); ++i) {
    out << csv_cell(names[static_cast<std::size_t>(i)]);
    for (int j = 0; j < corr.cols(); ++j) out << "," << format_double(corr(i, j));
    out << "\n";
  }
}

void write_ward_csv(const fs::path& path, const std::vector<WardMerge>& merges) {
  std::ofstream out = open_out(path);
  out << "step,left,right,height\n";
  for (std::size_t i = 0; i < merges.size(); ++i)
    out << i << "," << merges[i].left << "," << merges[i].right << ","
        << format_double(merges[i].height) << "\n";
}

void write_curve_csv(const fs::path& path, const AttackCurve& curve) {
  std::ofstream out = open_out(path);
  out << "step,deleted_label,bcc,rbcc\n";
  for (std::size_t i = 0; i < curve.steps.size(); ++i) {
    const AttackStep& s = curve.steps[i];
    out << (i + 1) << "," << s.deleted_label << "," << s.bcc << "," << format_double(s.rbcc)
        << "\n";
  }
}

double measure_parameter(const MeasureId& id) {
  if (id.kind == MeasureId::Kind::WK) return id.h;
  return id.theta;
}

}  // namespace

std::vector<std::string> cmd_generate(const GenerateOptions& opts) {
  if (opts.kind != "er" && opts.kind != "ab")
    throw std::invalid_argument("generate: kind must be 'er' or 'ab'");
  if (opts.count < 1) throw std::invalid_argument("generate: count must be >= 1");
  const bool is_er = opts.kind == "er";
  if (opts.n != 0) {
    if (opts.n < 2) throw std::invalid_argument("generate: n must be >= 2");
    if (is_er && (!(opts.p > 0.0) || opts.p > 0.5))
      throw std::invalid_argument("generate: p must lie in (0, 0.5]");
    if (!is_er && (opts.m < 1 || opts.m > 6))
      throw std::invalid_argument("generate: m must lie in {1..6}");
    if (!is_er && opts.n < opts.m + 1)
      throw std::invalid_argument("generate: n must be >= m + 1");
  } else if (opts.n_min < 2 || opts.n_max < opts.n_min) {
    throw std::invalid_argument("generate: need 2 <= n-min <= n-max");
  }

  fs::create_directories(opts.out_dir);
  std::vector<PopulationEntry> entries;
  std::vector<std::string> ids;
  if (opts.n != 0) {
    for (int i = 0; i < opts.count; ++i) {
      GeneratorSpec spec;
      spec.kind = is_er ? GeneratorSpec::Kind::ER : GeneratorSpec::Kind::AB;
      spec.n = opts.n;
      spec.p = opts.p;
      spec.m = opts.m;
      spec.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(i));
      entries.push_back({spec, generate(spec)});
    }
  } else {
    entries = sample_population(opts.count,
                                is_er ? GeneratorSpec::Kind::ER : GeneratorSpec::Kind::AB,
                                opts.n_min, opts.n_max, opts.seed);
  }

  std::vector<std::string> written;
  for (int i = 0; i < opts.count; ++i) {
    const std::string name = graph_file_name(opts.kind, i);
    ids.push_back(name);
    const std::string full = (fs::path(opts.out_dir) / name).string();
    write_edge_list(entries[static_cast<std::size_t>(i)].graph, full);
    written.push_back(full);
  }
  const std::string manifest = (fs::path(opts.out_dir) / "manifest.csv").string();
  write_manifest(manifest, ids, entries);
  written.push_back(manifest);
  return written;
}

void cmd_measure(const MeasureOptions& opts, std::ostream& console) {
  const Graph g = read_edge_list(opts.graph_path);
  MeasureId id = MeasureId::parse(opts.measure);
  if (id.kind == MeasureId::Kind::BL && !id.explicit_param) id.seed = opts.seed;
  const CostPolicy policy =
      opts.cost_policy == "unit" ? CostPolicy::unit() : CostPolicy::reciprocal();
  if (opts.cost_policy != "unit" && opts.cost_policy != "reciprocal")
    throw std::invalid_argument("measure: cost policy must be 'reciprocal' or 'unit'");

  const Vector scores = evaluate_measure(g, id, policy, opts.jobs);
  const Ranking ranking = rank_nodes(g, scores);

  std::ostringstream body;
  body << "label,score\n";
  for (int idx : ranking.order)
    body << g.label(idx) << "," << format_double(scores(idx)) << "\n";

  if (opts.out_path.empty()) {
    console << body.str();
  } else {
    open_out(opts.out_path) << body.str();
  }
}

void cmd_attack(const AttackOptions& opts, std::ostream& console) {
  const Graph g = read_edge_list(opts.graph_path);
  const MeasureId id = MeasureId::parse(opts.measure);
  if (opts.strategy != "single" && opts.strategy != "periodic")
    throw std::invalid_argument("attack: strategy must be 'single' or 'periodic'");
  if (opts.cost_policy != "unit" && opts.cost_policy != "reciprocal")
    throw std::invalid_argument("attack: cost policy must be 'reciprocal' or 'unit'");
  const AttackStrategy strategy = opts.strategy == "periodic"
                                      ? AttackStrategy::periodic(opts.budget)
                                      : AttackStrategy::single();
  const CostPolicy policy =
      opts.cost_policy == "unit" ? CostPolicy::unit() : CostPolicy::reciprocal();

  json summary;
  AttackCurve curve;
  MeasureId resolved = id;
  if (id.has_grid() && !id.explicit_param) {
    TuneResult tuned = tune_parameter(g, id, id.default_grid(), strategy, policy, opts.seed,
                                      opts.jobs);
    resolved = tuned.best;
    curve = std::move(tuned.curve);
    summary["tuned"] = true;
    summary["parameter"] = measure_parameter(resolved);
    json grid = json::array();
    for (const auto& [param, value] : tuned.grid_auc)
      grid.push_back({{"parameter", param}, {"auc", value}});
    summary["grid_auc"] = std::move(grid);
  } else {
    curve = run_attack(g, resolved, strategy, policy, opts.seed, opts.jobs);
    summary["tuned"] = false;
    if (resolved.has_grid()) summary["parameter"] = measure_parameter(resolved);
  }
  summary["measure"] = resolved.to_string();
  summary["family"] = resolved.family();
  summary["strategy"] = strategy.name();
  if (strategy.mode == AttackStrategy::Mode::PeriodicRanking)
    summary["budget"] = strategy.budget;
  summary["seed"] = opts.seed;
  summary["steps"] = curve.steps.size();
  summary["auc"] = curve.auc;

  fs::create_directories(opts.out_dir);
  write_curve_csv(fs::path(opts.out_dir) / "attack_curve.csv", curve);
  open_out(fs::path(opts.out_dir) / "attack_summary.json") << summary.dump(2) << "\n";
  console << "auc " << format_double(curve.auc) << " (" << resolved.to_string() << ", "
          << strategy.name() << ")\n";
}

void cmd_benchmark(const ExperimentConfig& cfg, std::ostream& console) {
  cfg.validate();
  const fs::path out_dir(cfg.out_dir);
  fs::create_directories(out_dir);
  open_out(out_dir / "config_used.cfg") << cfg.emit();

  PopulationFiles pop = build_population(cfg.count_ab, cfg.count_er, cfg.n_min, cfg.n_max,
                                         cfg.seed);
  write_manifest(out_dir / "manifest.csv", pop.ids, pop.entries);

  const std::vector<MeasureId> ids = cfg.measure_ids();
  const int n_graphs = static_cast<int>(pop.entries.size());
  const int k = static_cast<int>(ids.size());
  const AttackStrategy strategy = cfg.attack_strategy();
  const CostPolicy policy = cfg.policy();

  Matrix auc_table = Matrix::Constant(n_graphs, k, std::nan(""));
  std::vector<std::vector<Vector>> scores(
      static_cast<std::size_t>(n_graphs), std::vector<Vector>(static_cast<std::size_t>(k)));
  std::vector<std::vector<std::string>> errors(
      static_cast<std::size_t>(n_graphs), std::vector<std::string>(static_cast<std::size_t>(k)));
  Matrix tuned_value = Matrix::Constant(n_graphs, k, std::nan(""));
  std::mutex console_mu;

  parallel_for(0, n_graphs, cfg.jobs, [&](int gi) {
    const Graph& g = pop.entries[static_cast<std::size_t>(gi)].graph;
    for (int mi = 0; mi < k; ++mi) {
      const std::uint64_t run_seed =
          derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(gi)),
                      static_cast<std::uint64_t>(mi));
      try {
        MeasureId id = ids[static_cast<std::size_t>(mi)];
        AttackCurve curve;
        if (id.has_grid() && !id.explicit_param) {
          TuneResult tuned =
              tune_parameter(g, id, cfg.grid_for(id), strategy, policy, run_seed, 1);
          id = tuned.best;
          curve = std::move(tuned.curve);
          tuned_value(gi, mi) = measure_parameter(id);
        } else {
          curve = run_attack(g, id, strategy, policy, run_seed, 1);
        }
        auc_table(gi, mi) = curve.auc;
        scores[static_cast<std::size_t>(gi)][static_cast<std::size_t>(mi)] =
            evaluate_measure(g, bl_resolved(id, run_seed), policy, 1);
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(gi)][static_cast<std::size_t>(mi)] = e.what();
      }
    }
    const std::lock_guard<std::mutex> lock(console_mu);
    console << "[" << pop.ids[static_cast<std::size_t>(gi)] << "] n="
            << pop.entries[static_cast<std::size_t>(gi)].spec.n << " done\n";
  });

  std::vector<std::string> measure_names;
  measure_names.reserve(static_cast<std::size_t>(k));
  for (const MeasureId& id : ids) measure_names.push_back(id.to_string());

  {
    std::ofstream out = open_out(out_dir / "auc_table.csv");
    out << "graph_id";
    for (const std::string& name : measure_names) out << "," << csv_cell(name);
    out << "\n";
    for (int gi = 0; gi < n_graphs; ++gi) {
      out << pop.ids[static_cast<std::size_t>(gi)];
      for (int mi = 0; mi < k; ++mi)
        out << ","
            << (std::isnan(auc_table(gi, mi)) ? std::string("nan")
                                              : format_double(auc_table(gi, mi)));
      out << "\n";
    }
  }
  {
    std::ofstream out = open_out(out_dir / "tuned_params.csv");
    out << "graph_id,measure,parameter,auc\n";
    for (int gi = 0; gi < n_graphs; ++gi)
      for (int mi = 0; mi < k; ++mi)
        if (!std::isnan(tuned_value(gi, mi)))
          out << pop.ids[static_cast<std::size_t>(gi)] << ","
              << csv_cell(measure_names[static_cast<std::size_t>(mi)]) << ","
              << format_double(tuned_value(gi, mi)) << "," << format_double(auc_table(gi, mi))
              << "\n";
  }
  json failures = json::array();
  {
    std::ofstream out = open_out(out_dir / "failures.csv");
    out << "graph_id,measure,error\n";
    for (int gi = 0; gi < n_graphs; ++gi)
      for (int mi = 0; mi < k; ++mi)
        if (!errors[static_cast<std::size_t>(gi)][static_cast<std::size_t>(mi)].empty()) {
          const std::string& why = errors[static_cast<std::size_t>(gi)][static_cast<std::size_t>(mi)];
          out << pop.ids[static_cast<std::size_t>(gi)] << ","
              << csv_cell(measure_names[static_cast<std::size_t>(mi)]) << "," << csv_cell(why)
              << "\n";
          failures.push_back({{"graph", pop.ids[static_cast<std::size_t>(gi)]},
                              {"measure", measure_names[static_cast<std::size_t>(mi)]},
                              {"error", why}});
        }
  }

  // Stats run on complete rows only (graphs where every measure succeeded).
  std::vector<int> ok_rows;
  for (int gi = 0; gi < n_graphs; ++gi) {
    bool ok = true;
    for (int mi = 0; mi < k; ++mi)
      if (std::isnan(auc_table(gi, mi))) ok = false;
    if (ok) ok_rows.push_back(gi);
  }

  json report;
  report["seed"] = cfg.seed;
  report["strategy"] = cfg.strategy;
  report["cost_policy"] = cfg.cost_policy;
  report["graphs_total"] = n_graphs;
  report["graphs_complete"] = ok_rows.size();
  report["measures"] = measure_names;
  report["failures"] = std::move(failures);

  if (!ok_rows.empty()) {
    BenchmarkTable table;
    table.measures = measure_names;
    table.auc = Matrix(static_cast<int>(ok_rows.size()), k);
    for (std::size_t r = 0; r < ok_rows.size(); ++r) {
      table.graph_ids.push_back(pop.ids[static_cast<std::size_t>(ok_rows[r])]);
      table.auc.row(static_cast<int>(r)) = auc_table.row(ok_rows[r]);
    }

    const std::vector<SummaryRow> rows = summarize(table);
    {
      std::ofstream out = open_out(out_dir / "summary.csv");
      out << "measure,mean_auc,std_auc,graphs\n";
      for (int mi = 0; mi < k; ++mi)
        out << csv_cell(measure_names[static_cast<std::size_t>(mi)]) << ","
            << format_double(rows[static_cast<std::size_t>(mi)].mean) << ","
            << format_double(rows[static_cast<std::size_t>(mi)].stddev) << ","
            << rows[static_cast<std::size_t>(mi)].count << "\n";
    }
    json mean_auc;
    for (int mi = 0; mi < k; ++mi)
      mean_auc[measure_names[static_cast<std::size_t>(mi)]] =
          json_safe(rows[static_cast<std::size_t>(mi)].mean);
    report["mean_auc"] = std::move(mean_auc);

    try {
      const NemenyiResult nem = friedman_nemenyi(table, 0.05);
      std::ofstream out = open_out(out_dir / "nemenyi.csv");
      out << "measure,mean_rank,critical_difference,alpha\n";
      for (int mi = 0; mi < k; ++mi)
        out << csv_cell(measure_names[static_cast<std::size_t>(mi)]) << ","
            << format_double(nem.mean_ranks(mi)) << ","
            << format_double(nem.critical_difference) << "," << format_double(nem.alpha) << "\n";
      report["critical_difference"] = nem.critical_difference;
      json ranks;
      for (int mi = 0; mi < k; ++mi)
        ranks[measure_names[static_cast<std::size_t>(mi)]] = nem.mean_ranks(mi);
      report["mean_ranks"] = std::move(ranks);
    } catch (const std::exception& e) {
      report["nemenyi_error"] = e.what();
    }

    try {
      const BordaResult b = borda(table);
      std::ofstream out = open_out(out_dir / "borda.csv");
      out << "position,measure,points\n";
      json order = json::array();
      for (std::size_t pos = 0; pos < b.order.size(); ++pos) {
        const int mi = b.order[pos];
        out << (pos + 1) << "," << csv_cell(measure_names[static_cast<std::size_t>(mi)]) << ","
            << format_double(b.points(mi)) << "\n";
        order.push_back(measure_names[static_cast<std::size_t>(mi)]);
      }
      report["borda_order"] = std::move(order);
    } catch (const std::exception& e) {
      report["borda_error"] = e.what();
    }

    try {
      std::vector<std::vector<Vector>> ok_scores;
      for (int gi : ok_rows) ok_scores.push_back(scores[static_cast<std::size_t>(gi)]);
      const Matrix corr = correlation_matrix(ok_scores);
      write_correlation_csv(out_dir / "correlation_matrix.csv", measure_names, corr);
      if (k >= 2) write_ward_csv(out_dir / "ward_merges.csv", ward_cluster(corr));
    } catch (const std::exception& e) {
      report["correlation_error"] = e.what();
    }
  }

  open_out(out_dir / "report.json") << report.dump(2) << "\n";
  console << "benchmark complete: " << ok_rows.size() << "/" << n_graphs
          << " graphs, results in " << cfg.out_dir << "\n";
}

void cmd_correlate(const CorrelateOptions& opts, std::ostream& console) {
  if (opts.count_ab < 0 || opts.count_er < 0 || opts.count_ab + opts.count_er < 1)
    throw std::invalid_argument("correlate: population must contain at least one graph");
  if (opts.n_min < 2 || opts.n_max < opts.n_min)
    throw std::invalid_argument("correlate: need 2 <= n-min <= n-max");
  if (opts.cost_policy != "unit" && opts.cost_policy != "reciprocal")
    throw std::invalid_argument("correlate: cost policy must be 'reciprocal' or 'unit'");

  std::vector<std::string> names = opts.measures;
  if (names.empty())
    names = {"ec",  "spb", "rwb", "est", "wk:h=2", "kle",
             "wie", "kir", "kem", "shv", "bpc:theta=1", "bpcf:theta=1"};
  std::vector<MeasureId> ids;
  ids.reserve(names.size());
  for (const std::string& name : names) ids.push_back(MeasureId::parse(name));
  const CostPolicy policy =
      opts.cost_policy == "unit" ? CostPolicy::unit() : CostPolicy::reciprocal();

  PopulationFiles pop = build_population(opts.count_ab, opts.count_er, opts.n_min, opts.n_max,
                                         opts.seed);
  const int n_graphs = static_cast<int>(pop.entries.size());
  const int k = static_cast<int>(ids.size());
  std::vector<std::vector<Vector>> scores(
      static_cast<std::size_t>(n_graphs), std::vector<Vector>(static_cast<std::size_t>(k)));
  parallel_for(0, n_graphs, opts.jobs, [&](int gi) {
    const Graph& g = pop.entries[static_cast<std::size_t>(gi)].graph;
    for (int mi = 0; mi < k; ++mi) {
      const std::uint64_t run_seed =
          derive_seed(derive_seed(opts.seed, static_cast<std::uint64_t>(gi)),
                      static_cast<std::uint64_t>(mi));
      scores[static_cast<std::size_t>(gi)][static_cast<std::size_t>(mi)] =
          evaluate_measure(g, bl_resolved(ids[static_cast<std::size_t>(mi)], run_seed), policy, 1);
    }
  });

  const Matrix corr = correlation_matrix(scores);
  fs::create_directories(opts.out_dir);
  std::vector<std::string> canonical;
  canonical.reserve(ids.size());
  for (const MeasureId& id : ids) canonical.push_back(id.to_string());
  write_manifest(fs::path(opts.out_dir) / "manifest.csv", pop.ids, pop.entries);
  write_correlation_csv(fs::path(opts.out_dir) / "correlation_matrix.csv", canonical, corr);
  if (k >= 2) write_ward_csv(fs::path(opts.out_dir) / "ward_merges.csv", ward_cluster(corr));
  console << "correlation matrix over " << n_graphs << " graphs written to " << opts.out_dir
          << "\n";
}

void cmd_complexity(const ComplexityOptions& opts, std::ostream& console) {
  std::vector<int> sizes = opts.sizes;
  if (opts.include_large) sizes.push_back(3000);
  if (sizes.empty()) throw std::invalid_argument("complexity: size list is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 3) throw std::invalid_argument("complexity: sizes must be >= 3");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("complexity: sizes must be strictly ascending");
  }
  if (!(opts.theta > 0.0)) throw std::invalid_argument("complexity: theta must be positive");
  if (!(opts.p > 0.0) || opts.p > 1.0)
    throw std::invalid_argument("complexity: p must lie in (0, 1]");
  if (opts.reps < 1) throw std::invalid_argument("complexity: reps must be >= 1");

  const CostPolicy policy = CostPolicy::reciprocal();
  std::ostringstream body;
  body << "n,t_bpc,t_bpcf,ratio\n";
  auto cpu_seconds = [] {
    // Process-CPU time; wall clocks pick up scheduler noise on shared hosts.
    timespec ts;
    clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
  };
  for (int n : sizes) {
    const Graph g = erdos_renyi(n, opts.p, derive_seed(opts.seed, static_cast<std::uint64_t>(n)));
    // Large instances dominate their own noise; one repetition suffices there.
    const int reps = n >= 300 ? 1 : opts.reps;
    auto time_of = [&](auto&& fn) {
      double best = kInf;
      for (int r = 0; r < reps; ++r) {
        const double t0 = cpu_seconds();
        fn();
        best = std::min(best, cpu_seconds() - t0);
      }
      return best;
    };
    const double t_bpc = time_of([&] { bpc(g, policy, opts.theta); });
    const double t_bpcf = time_of([&] { bpcf(g, policy, opts.theta); });
    body << n << "," << format_double(t_bpc) << "," << format_double(t_bpcf) << ","
         << format_double(t_bpc / t_bpcf) << "\n";
    console << "n=" << n << " t_bpc=" << format_double(t_bpc)
            << "s t_bpcf=" << format_double(t_bpcf) << "s ratio=" << format_double(t_bpc / t_bpcf)
            << "\n";
  }
  if (!opts.out_path.empty()) open_out(opts.out_path) << body.str();
}

}  // namespace bopcrit
