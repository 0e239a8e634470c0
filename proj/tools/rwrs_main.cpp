// rwrs: simulation and verification lab for extremes of transient random
// walks in weakly dependent random sceneries.
//
// Subcommands: simulate-walk, estimate-q, run-extremes, check-conditions,
// decompose-blocks, lemma-diagnostics, poisson-test, sweep.
//
// All randomness flows from one master seed through derived streams; output
// data files are byte-identical across re-runs and across --threads values.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwrs/blocks.hpp"
#include "rwrs/conditions.hpp"
#include "rwrs/config.hpp"
#include "rwrs/extremes.hpp"
#include "rwrs/io.hpp"
#include "rwrs/manifest.hpp"
#include "rwrs/version.hpp"

namespace fs = std::filesystem;
using namespace rwrs;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240817;

struct CommonOpts {
  std::uint64_t seed = kDefaultSeed;
  std::string seed_source = "default";
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "master seed (overrides RWRS_SEED)");
  cmd->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--format", opts.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)");
}

void resolve_seed(const CLI::App* cmd, CommonOpts& opts) {
  if (cmd->count("--seed")) {
    opts.seed_source = "flag";
    return;
  }
  if (const char* env = std::getenv("RWRS_SEED")) {
    opts.seed = std::strtoull(env, nullptr, 10);
    opts.seed_source = "env";
  }
}

std::string key_hex(RngKey key) {
  char buf[36];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", (unsigned long long)key.hi,
                (unsigned long long)key.lo);
  return buf;
}

std::string write_table(const Table& table, const CommonOpts& opts, const std::string& stem) {
  fs::create_directories(opts.out_dir);
  const std::string path = (fs::path(opts.out_dir) / (stem + "." + opts.format)).string();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  if (opts.format == "csv") table.write_csv(os);
  else table.write_jsonl(os);
  return path;
}

void finish_manifest(RunManifest manifest, const CommonOpts& opts, const std::string& command) {
  manifest.command = "rwrs " + command;
  manifest.master_seed = opts.seed;
  manifest.seed_source = opts.seed_source;
  manifest.threads = opts.threads;
  manifest.format = opts.format;
  fs::create_directories(opts.out_dir);
  write_manifest((fs::path(opts.out_dir) / "manifest.json").string(), manifest);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Parse the config; report every located error on stderr. The CLI seed fills
// in experiments whose section has no seed key.
std::vector<ExperimentConfig> load_experiments(const std::string& path,
                                               const CommonOpts& opts, std::string& echo) {
  echo = read_file(path);
  ParsedConfig parsed = parse_config(echo);
  if (!parsed.errors.empty()) {
    for (const auto& e : parsed.errors) {
      std::cerr << path << ":" << e.line << ": ";
      if (!e.key.empty()) std::cerr << "key '" << e.key << "': ";
      std::cerr << e.reason << "\n";
    }
    throw CLI::RuntimeError("config error", 1);
  }
  for (auto& cfg : parsed.experiments)
    if (!cfg.seed_from_config) cfg.master_seed = opts.seed;
  return parsed.experiments;
}

std::vector<std::int64_t> parse_grid(const std::string& text) {
  std::vector<std::int64_t> grid;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ','))
    if (!item.empty()) grid.push_back(std::strtoll(item.c_str(), nullptr, 10));
  return grid;
}

MixingSchedule schedule_for(const SceneryModel& model, std::int64_t n,
                            const ScheduleOverride& ovr) {
  MixingSchedule s = default_schedule(model, n);
  if (ovr.k_n || ovr.l_n)
    s = schedule_with(n, ovr.k_n.value_or(s.k_n), ovr.l_n.value_or(s.l_n), s.dep_range);
  return s;
}

std::string mode_name(ExperimentMode mode) {
  return mode == ExperimentMode::Quenched ? "quenched" : "annealed";
}

ExperimentResult run_mode(const ExperimentConfig& cfg, unsigned threads) {
  return cfg.mode == ExperimentMode::Quenched ? run_quenched(cfg, threads)
                                              : run_annealed(cfg, threads);
}

std::string scenery_name(const ExperimentConfig& cfg) {
  if (std::holds_alternative<IidDependence>(cfg.dependence)) return "iid";
  if (std::holds_alternative<GaussMaDependence>(cfg.dependence)) return "gauss_ma";
  return "moving_max";
}

// ---------------------------------------------------------------- commands

int cmd_simulate_walk(CommonOpts& opts, double alpha, std::int64_t n) {
  const StepLaw law = StepLaw::make(alpha);
  const RngKey key = derive(master_key(opts.seed), 1);
  const auto walk = simulate_walk(law, n, key);
  const auto st = walk_stats(walk);

  Table path_table({"step", "position"});
  for (std::int64_t k = 0; k < n; ++k)
    path_table.add_row({k + 1, walk.positions[static_cast<std::size_t>(k)]});
  Table stats_table({"n", "range", "returned_to_origin", "last_new_site_time"});
  stats_table.add_row({st.n, st.range, st.returned_to_origin, st.distinct_visit_times.back()});

  RunManifest manifest;
  manifest.derived_seeds["walk"] = key_hex(key);
  manifest.outputs.push_back(write_table(path_table, opts, "walk"));
  manifest.outputs.push_back(write_table(stats_table, opts, "walk_stats"));
  finish_manifest(std::move(manifest), opts, "simulate-walk");
  return 0;
}

int cmd_estimate_q(CommonOpts& opts, double alpha, std::int64_t n, std::int64_t horizon,
                   std::int64_t reps, std::int64_t survival_reps, const std::string& method) {
  const StepLaw law = StepLaw::make(alpha);
  const RngKey root = master_key(opts.seed);
  Table table({"method", "value", "stderr", "n", "reps", "seed"});
  RunManifest manifest;
  if (method == "range" || method == "both") {
    const RngKey key = derive(root, 1);
    const auto q = estimate_q_range(law, n, reps, key, opts.threads);
    table.add_row({std::string("range"), q.value, q.std_error, q.n_or_horizon, q.reps,
                   static_cast<std::int64_t>(opts.seed)});
    manifest.derived_seeds["range"] = key_hex(key);
  }
  if (method == "survival" || method == "both") {
    const RngKey key = derive(root, 2);
    const auto q = estimate_q_survival(law, horizon, survival_reps, key, opts.threads);
    table.add_row({std::string("survival"), q.value, q.std_error, q.n_or_horizon, q.reps,
                   static_cast<std::int64_t>(opts.seed)});
    manifest.derived_seeds["survival"] = key_hex(key);
  }
  manifest.outputs.push_back(write_table(table, opts, "q_estimates"));
  finish_manifest(std::move(manifest), opts, "estimate-q");
  return 0;
}

const std::vector<std::string> kExtremesColumns = {
    "experiment", "mode", "alpha", "scenery", "marginal", "n", "tau", "reps", "seed",
    "u_n", "q_value", "q_stderr", "empirical_prob", "empirical_stderr", "target",
    "target_stderr", "z_score", "mean_count"};

void append_extremes_row(Table& table, const ExperimentConfig& cfg,
                         const ExperimentResult& res) {
  table.add_row({cfg.name, mode_name(res.mode), cfg.step_alpha, scenery_name(cfg),
                 cfg.marginal.name(), res.n, res.tau, res.reps,
                 static_cast<std::int64_t>(res.master_seed), res.u_n, res.q_estimate.value,
                 res.q_estimate.std_error, res.empirical_prob, res.std_error, res.target,
                 res.target_se, res.z_score, res.mean_count});
}

int cmd_run_extremes(CommonOpts& opts, const std::string& config_path) {
  std::string echo;
  auto experiments = load_experiments(config_path, opts, echo);
  Table table(kExtremesColumns);
  RunManifest manifest;
  manifest.config_echo = echo;
  for (const auto& cfg : experiments) {
    const auto res = run_mode(cfg, opts.threads);
    append_extremes_row(table, cfg, res);
    manifest.derived_seeds[cfg.name] = key_hex(master_key(cfg.master_seed));
  }
  manifest.outputs.push_back(write_table(table, opts, "extremes"));
  finish_manifest(std::move(manifest), opts, "run-extremes");
  return 0;
}

int cmd_check_conditions(CommonOpts& opts, const std::string& config_path,
                         const std::string& grid_text, std::int64_t dprime_reps) {
  std::string echo;
  auto experiments = load_experiments(config_path, opts, echo);
  const auto grid = parse_grid(grid_text);
  if (grid.size() < 3) {
    std::cerr << "check-conditions: --n-grid needs at least 3 increasing values\n";
    return 1;
  }

  Table schedule_table({"experiment", "n", "constraint", "value", "pass"});
  Table dprime_table({"experiment", "n", "k_n", "l_n", "u_n", "method_requested",
                      "method_used", "fell_back", "value", "stderr", "mc_reps"});
  RunManifest manifest;
  manifest.config_echo = echo;

  for (const auto& cfg : experiments) {
    const RngKey master = master_key(cfg.master_seed);
    const SceneryModel model = make_scenery(cfg.dependence, cfg.marginal, derive(master, 2));

    const auto report = validate_schedule(
        [&](const SceneryModel& m, std::int64_t n) { return schedule_for(m, n, cfg.schedule); },
        grid, model);
    for (const auto& check : report.checks)
      for (std::size_t i = 0; i < grid.size(); ++i)
        schedule_table.add_row({cfg.name, grid[i], check.constraint, check.values[i],
                                check.pass});

    if (cfg.tau > 0.0) {
      const RngKey dkey = derive(master, 4);
      for (std::int64_t n : grid) {
        const auto sched = schedule_for(model, n, cfg.schedule);
        const auto res = dprime_statistic(model, n, sched, cfg.tau, DprimeMethod::Analytic,
                                          dprime_reps, dkey, opts.threads);
        dprime_table.add_row(
            {cfg.name, n, sched.k_n, sched.l_n, res.u_n,
             std::string(res.requested == DprimeMethod::Analytic ? "analytic" : "montecarlo"),
             std::string(res.used == DprimeMethod::Analytic ? "analytic" : "montecarlo"),
             res.fell_back, res.value, res.std_error, res.mc_reps});
      }
      manifest.derived_seeds[cfg.name + ".dprime"] = key_hex(dkey);
    }
  }
  manifest.outputs.push_back(write_table(schedule_table, opts, "schedule_checks"));
  manifest.outputs.push_back(write_table(dprime_table, opts, "dprime"));
  finish_manifest(std::move(manifest), opts, "check-conditions");
  return 0;
}

int cmd_decompose_blocks(CommonOpts& opts, double alpha, std::int64_t n) {
  const StepLaw law = StepLaw::make(alpha);
  const RngKey key = derive(master_key(opts.seed), 1);
  const auto st = walk_stats(simulate_walk(law, n, key));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), RngKey{});
  const auto sched = default_schedule(model, n);
  const auto d = decompose(st, sched);

  Table blocks_table({"block", "size", "min_site", "max_site", "stripe_size"});
  for (std::int64_t j = 0; j < d.K_n(); ++j) {
    const auto b = d.block(j);
    blocks_table.add_row({j + 1, static_cast<std::int64_t>(b.size()),
                          b.empty() ? std::int64_t{0} : b.front(),
                          b.empty() ? std::int64_t{0} : b.back(),
                          static_cast<std::int64_t>(d.stripe(j).size())});
  }
  Table summary({"n", "range", "k_n", "l_n", "r_n", "K_n"});
  summary.add_row({n, st.range, sched.k_n, sched.l_n, sched.r_n, d.K_n()});

  RunManifest manifest;
  manifest.derived_seeds["walk"] = key_hex(key);
  manifest.outputs.push_back(write_table(blocks_table, opts, "blocks"));
  manifest.outputs.push_back(write_table(summary, opts, "blocks_summary"));
  finish_manifest(std::move(manifest), opts, "decompose-blocks");
  return 0;
}

int cmd_lemma_diagnostics(CommonOpts& opts, const std::string& config_path,
                          const std::string& grid_text) {
  std::string echo;
  auto experiments = load_experiments(config_path, opts, echo);
  const auto grid = parse_grid(grid_text);

  Table table({"experiment", "n", "reps", "d_i", "se_i", "d_ii", "se_ii", "d_iii",
               "se_iii", "product", "product_se", "target", "target_se", "deviation",
               "combined_se"});
  RunManifest manifest;
  manifest.config_echo = echo;

  for (const auto& cfg : experiments) {
    const RngKey master = master_key(cfg.master_seed);
    const StepLaw law = StepLaw::make(cfg.step_alpha);
    const SceneryModel model = make_scenery(cfg.dependence, cfg.marginal, derive(master, 2));
    const std::vector<std::int64_t> ns =
        grid.empty() ? std::vector<std::int64_t>{cfg.n} : grid;
    for (std::int64_t n : ns) {
      const auto st =
          walk_stats(simulate_walk(law, n, derive(master, 1, static_cast<std::uint64_t>(n))));
      const auto sched = schedule_for(model, n, cfg.schedule);
      const RngKey mc_key = derive(master, 5, static_cast<std::uint64_t>(n));
      const auto l1 = lemma1_diagnostic(model, st, sched, cfg.tau, cfg.reps, mc_key,
                                        opts.threads);
      const auto q_hat = estimate_q_range(law, n, cfg.q_reps, derive(master, 3), opts.threads);
      const auto l2 = lemma2_diagnostic(model, st, sched, cfg.tau, cfg.reps, mc_key, q_hat,
                                        opts.threads);
      table.add_row({cfg.name, n, cfg.reps, l1.d_i, l1.se_i, l1.d_ii, l1.se_ii, l1.d_iii,
                     l1.se_iii, l2.product, l2.product_se, l2.target, l2.target_se,
                     l2.deviation, l2.combined_se});
    }
    manifest.derived_seeds[cfg.name] = key_hex(master);
  }
  manifest.outputs.push_back(write_table(table, opts, "lemma_diagnostics"));
  finish_manifest(std::move(manifest), opts, "lemma-diagnostics");
  return 0;
}

int cmd_poisson_test(CommonOpts& opts, const std::string& config_path) {
  std::string echo;
  auto experiments = load_experiments(config_path, opts, echo);
  Table table({"experiment", "mode", "n", "tau", "lambda", "cells", "chi_square", "df",
               "p_value", "zero_fraction", "empirical_prob", "mean_count"});
  Table hist({"experiment", "count", "frequency"});
  RunManifest manifest;
  manifest.config_echo = echo;

  for (const auto& cfg : experiments) {
    const auto res = run_mode(cfg, opts.threads);
    const double lambda = cfg.tau * res.q_estimate.value;
    const auto gof = poisson_gof(res.exceedance_counts, lambda);

    std::int64_t zeros = 0, max_count = 0;
    for (auto c : res.exceedance_counts) {
      zeros += (c == 0) ? 1 : 0;
      max_count = std::max(max_count, c);
    }
    table.add_row({cfg.name, mode_name(res.mode), res.n, res.tau, lambda,
                   static_cast<std::int64_t>(gof.cells), gof.statistic, gof.df, gof.p_value,
                   static_cast<double>(zeros) / static_cast<double>(res.reps),
                   res.empirical_prob, res.mean_count});
    std::vector<std::int64_t> freq(static_cast<std::size_t>(max_count) + 1, 0);
    for (auto c : res.exceedance_counts) ++freq[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < freq.size(); ++k)
      hist.add_row({cfg.name, static_cast<std::int64_t>(k), freq[k]});
    manifest.derived_seeds[cfg.name] = key_hex(master_key(cfg.master_seed));
  }
  manifest.outputs.push_back(write_table(table, opts, "poisson"));
  manifest.outputs.push_back(write_table(hist, opts, "poisson_counts"));
  finish_manifest(std::move(manifest), opts, "poisson-test");
  return 0;
}

int cmd_sweep(CommonOpts& opts, const std::string& config_path, const std::string& grid_text) {
  std::string echo;
  auto experiments = load_experiments(config_path, opts, echo);
  const auto grid = parse_grid(grid_text);
  if (grid.empty()) {
    std::cerr << "sweep: --n-grid required (comma-separated list)\n";
    return 1;
  }

  Table table({"experiment", "mode", "n", "tau", "reps", "empirical_prob",
               "empirical_stderr", "target", "target_stderr", "abs_diff", "z_score"});
  RunManifest manifest;
  manifest.config_echo = echo;

  for (const auto& cfg : experiments) {
    for (std::int64_t n : grid) {
      ExperimentConfig point = cfg;
      point.n = n;
      const auto res = run_mode(point, opts.threads);
      table.add_row({cfg.name, mode_name(res.mode), n, res.tau, res.reps,
                     res.empirical_prob, res.std_error, res.target, res.target_se,
                     std::fabs(res.empirical_prob - res.target), res.z_score});
    }
    manifest.derived_seeds[cfg.name] = key_hex(master_key(cfg.master_seed));
  }
  manifest.outputs.push_back(write_table(table, opts, "sweep"));
  finish_manifest(std::move(manifest), opts, "sweep");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"extremes of transient random walks in random sceneries"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* walk_cmd = app.add_subcommand("simulate-walk", "simulate one walk and its stats");
  CommonOpts walk_opts;
  double walk_alpha = 0.5;
  std::int64_t walk_n = 10000;
  walk_cmd->add_option("--alpha", walk_alpha, "step tail index in (0,1)")->required();
  walk_cmd->add_option("--n", walk_n, "walk length")->required();
  add_common(walk_cmd, walk_opts);
  walk_cmd->footer(
      "Writes walk.{csv,jsonl} (step, position) and walk_stats.{csv,jsonl}\n"
      "(n, range, returned_to_origin, last_new_site_time), plus manifest.json.");

  auto* q_cmd = app.add_subcommand("estimate-q", "estimate q by range and survival");
  CommonOpts q_opts;
  double q_alpha = 0.5;
  std::int64_t q_n = 100000, q_horizon = 100000, q_reps = 200, q_sreps = 10000;
  std::string q_method = "both";
  q_cmd->add_option("--alpha", q_alpha, "step tail index in (0,1)")->required();
  q_cmd->add_option("--n", q_n, "walk length for the range estimator")->capture_default_str();
  q_cmd->add_option("--horizon", q_horizon, "horizon for the survival estimator")
      ->capture_default_str();
  q_cmd->add_option("--reps", q_reps, "replications for the range estimator")
      ->capture_default_str();
  q_cmd->add_option("--survival-reps", q_sreps, "replications for the survival estimator")
      ->capture_default_str();
  q_cmd->add_option("--method", q_method, "range, survival or both")
      ->check(CLI::IsMember({"range", "survival", "both"}))
      ->capture_default_str();
  add_common(q_cmd, q_opts);
  q_cmd->footer(
      "Writes q_estimates.{csv,jsonl} with columns\n"
      "(method, value, stderr, n, reps, seed), plus manifest.json.");

  auto* ext_cmd = app.add_subcommand("run-extremes", "run the limit-theorem experiments");
  CommonOpts ext_opts;
  std::string ext_config;
  ext_cmd->add_option("--config", ext_config, "experiment config file")->required();
  add_common(ext_cmd, ext_opts);
  ext_cmd->footer(
      "Writes extremes.{csv,jsonl} with columns (experiment, mode, alpha, scenery,\n"
      "marginal, n, tau, reps, seed, u_n, q_value, q_stderr, empirical_prob,\n"
      "empirical_stderr, target, target_stderr, z_score, mean_count).");

  auto* cond_cmd = app.add_subcommand("check-conditions", "schedule checks and the D' statistic");
  CommonOpts cond_opts;
  std::string cond_config, cond_grid = "1000,10000,100000";
  std::int64_t cond_reps = 1000000;
  cond_cmd->add_option("--config", cond_config, "experiment config file")->required();
  cond_cmd->add_option("--n-grid", cond_grid, "comma-separated n grid")->capture_default_str();
  cond_cmd->add_option("--dprime-reps", cond_reps, "Monte Carlo draws per lag")
      ->capture_default_str();
  add_common(cond_cmd, cond_opts);
  cond_cmd->footer(
      "Writes schedule_checks.{csv,jsonl} (experiment, n, constraint, value, pass)\n"
      "and dprime.{csv,jsonl} (experiment, n, k_n, l_n, u_n, method_requested,\n"
      "method_used, fell_back, value, stderr, mc_reps).");

  auto* blk_cmd =
      app.add_subcommand("decompose-blocks", "block/stripe decomposition of one walk");
  CommonOpts blk_opts;
  double blk_alpha = 0.5;
  std::int64_t blk_n = 10000;
  blk_cmd->add_option("--alpha", blk_alpha, "step tail index in (0,1)")->required();
  blk_cmd->add_option("--n", blk_n, "walk length")->required();
  add_common(blk_cmd, blk_opts);
  blk_cmd->footer(
      "Writes blocks.{csv,jsonl} (block, size, min_site, max_site, stripe_size)\n"
      "and blocks_summary.{csv,jsonl} (n, range, k_n, l_n, r_n, K_n).");

  auto* lem_cmd = app.add_subcommand("lemma-diagnostics", "stripe and product diagnostics");
  CommonOpts lem_opts;
  std::string lem_config, lem_grid;
  lem_cmd->add_option("--config", lem_config, "experiment config file")->required();
  lem_cmd->add_option("--n-grid", lem_grid, "comma-separated n grid (default: config n)");
  add_common(lem_cmd, lem_opts);
  lem_cmd->footer(
      "Writes lemma_diagnostics.{csv,jsonl} (experiment, n, reps, d_i, se_i, d_ii,\n"
      "se_ii, d_iii, se_iii, product, product_se, target, target_se, deviation,\n"
      "combined_se).");

  auto* poi_cmd = app.add_subcommand("poisson-test", "exceedance-count Poisson GOF");
  CommonOpts poi_opts;
  std::string poi_config;
  poi_cmd->add_option("--config", poi_config, "experiment config file")->required();
  add_common(poi_cmd, poi_opts);
  poi_cmd->footer(
      "Writes poisson.{csv,jsonl} (experiment, mode, n, tau, lambda, cells,\n"
      "chi_square, df, p_value, zero_fraction, empirical_prob, mean_count) and a\n"
      "poisson_counts histogram (experiment, count, frequency).");

  auto* swp_cmd = app.add_subcommand("sweep", "experiment over an n grid");
  CommonOpts swp_opts;
  std::string swp_config, swp_grid = "1000,10000,100000";
  swp_cmd->add_option("--config", swp_config, "experiment config file")->required();
  swp_cmd->add_option("--n-grid", swp_grid, "comma-separated n grid")->capture_default_str();
  add_common(swp_cmd, swp_opts);
  swp_cmd->footer(
      "Writes sweep.{csv,jsonl} (experiment, mode, n, tau, reps, empirical_prob,\n"
      "empirical_stderr, target, target_stderr, abs_diff, z_score).");

  CLI11_PARSE(app, argc, argv);

  try {
    if (walk_cmd->parsed()) {
      resolve_seed(walk_cmd, walk_opts);
      return cmd_simulate_walk(walk_opts, walk_alpha, walk_n);
    }
    if (q_cmd->parsed()) {
      resolve_seed(q_cmd, q_opts);
      return cmd_estimate_q(q_opts, q_alpha, q_n, q_horizon, q_reps, q_sreps, q_method);
    }
    if (ext_cmd->parsed()) {
      resolve_seed(ext_cmd, ext_opts);
      return cmd_run_extremes(ext_opts, ext_config);
    }
    if (cond_cmd->parsed()) {
      resolve_seed(cond_cmd, cond_opts);
      return cmd_check_conditions(cond_opts, cond_config, cond_grid, cond_reps);
    }
    if (blk_cmd->parsed()) {
      resolve_seed(blk_cmd, blk_opts);
      return cmd_decompose_blocks(blk_opts, blk_alpha, blk_n);
    }
    if (lem_cmd->parsed()) {
      resolve_seed(lem_cmd, lem_opts);
      return cmd_lemma_diagnostics(lem_opts, lem_config, lem_grid);
    }
    if (poi_cmd->parsed()) {
      resolve_seed(poi_cmd, poi_opts);
      return cmd_poisson_test(poi_opts, poi_config);
    }
    if (swp_cmd->parsed()) {
      resolve_seed(swp_cmd, swp_opts);
      return cmd_sweep(swp_opts, swp_config, swp_grid);
    }
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();  // config errors already reported on stderr
  } catch (const std::exception& e) {
    std::cerr << "rwrs: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
