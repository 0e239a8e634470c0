#include "rwrs/extremes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

namespace {

constexpr std::uint64_t kStreamWalk = 1;
constexpr std::uint64_t kStreamScenery = 2;
constexpr std::uint64_t kStreamQ = 3;

std::int64_t count_exceedances(const SceneryModel& scenery,
                               std::span<const std::int64_t> sites, double u_n) {
  std::int64_t count = 0;
  for (std::int64_t site : sites)
    if (scenery.value(site) > u_n) ++count;
  return count;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const StepLaw& law,
                                ExperimentMode mode, unsigned threads) {
  if (config.n < 1) throw std::domain_error("extremes experiment requires n >= 1");
  if (config.reps < 100) throw std::domain_error("extremes experiment requires reps >= 100");

  const RngKey master = master_key(config.master_seed);
  const RngKey walk_root = derive(master, kStreamWalk);
  const RngKey scenery_root = derive(master, kStreamScenery);

  const SceneryModel base = make_scenery(config.dependence, config.marginal, scenery_root);
  const double u_n = base.threshold(config.n, config.tau).u_n;

  const QEstimate q_hat =
      estimate_q_range(law, config.n, config.q_reps, derive(master, kStreamQ), threads);

  std::vector<std::int64_t> counts(static_cast<std::size_t>(config.reps));
  if (mode == ExperimentMode::Quenched) {
    const WalkRealization walk = simulate_walk(law, config.n, walk_root);
    const WalkStats stats = walk_stats(walk);
    parallel_for(static_cast<std::size_t>(config.reps), threads,
                 [&](std::size_t begin, std::size_t end) {
                   for (std::size_t r = begin; r < end; ++r) {
                     const SceneryModel redraw = base.with_seed(derive(scenery_root, r));
                     counts[r] = count_exceedances(redraw, stats.visited_sites, u_n);
                   }
                 });
  } else {
    parallel_for(static_cast<std::size_t>(config.reps), threads,
                 [&](std::size_t begin, std::size_t end) {
                   std::unordered_set<std::int64_t> seen;
                   seen.reserve(static_cast<std::size_t>(config.n));
                   std::vector<std::int64_t> sites;
                   for (std::size_t r = begin; r < end; ++r) {
                     seen.clear();
                     sites.clear();
                     CounterRng rng(derive(walk_root, r));
                     std::int64_t s = 0;
                     for (std::int64_t k = 0; k < config.n; ++k) {
                       s += law.sample(rng);
                       if (seen.insert(s).second) sites.push_back(s);
                     }
                     const SceneryModel redraw = base.with_seed(derive(scenery_root, r));
                     counts[r] = count_exceedances(redraw, sites, u_n);
                   }
                 });
  }

  ExperimentResult out;
  out.n = config.n;
  out.tau = config.tau;
  out.reps = config.reps;
  out.mode = mode;
  out.master_seed = config.master_seed;
  out.u_n = u_n;
  out.q_estimate = q_hat;
  out.exceedance_counts = std::move(counts);

  std::int64_t zeros = 0;
  double total = 0.0;
  for (auto c : out.exceedance_counts) {
    zeros += (c == 0) ? 1 : 0;
    total += static_cast<double>(c);
  }
  const double reps_d = static_cast<double>(config.reps);
  out.empirical_prob = static_cast<double>(zeros) / reps_d;
  out.std_error = std::sqrt(out.empirical_prob * (1.0 - out.empirical_prob) / reps_d);
  out.mean_count = total / reps_d;

  out.target = std::exp(-config.tau * q_hat.value);
  out.target_se = config.tau * out.target * q_hat.std_error;
  const double combined =
      std::sqrt(out.std_error * out.std_error + out.target_se * out.target_se);
  const double diff = out.empirical_prob - out.target;
  if (combined > 0.0) {
    out.z_score = diff / combined;
  } else {
    out.z_score = (diff == 0.0) ? 0.0
                                : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return out;
}

}  // namespace

ExperimentResult run_quenched(const ExperimentConfig& config, const StepLaw& law,
                              unsigned threads) {
  return run_experiment(config, law, ExperimentMode::Quenched, threads);
}

ExperimentResult run_quenched(const ExperimentConfig& config, unsigned threads) {
  return run_quenched(config, StepLaw::make(config.step_alpha), threads);
}

ExperimentResult run_annealed(const ExperimentConfig& config, const StepLaw& law,
                              unsigned threads) {
  return run_experiment(config, law, ExperimentMode::Annealed, threads);
}

ExperimentResult run_annealed(const ExperimentConfig& config, unsigned threads) {
  return run_annealed(config, StepLaw::make(config.step_alpha), threads);
}

ExceedancePoints exceedance_points(const SceneryModel& model, const WalkStats& stats,
                                   std::int64_t n, double tau, const QEstimate& q_hat) {
  if (stats.n != n) throw std::domain_error("exceedance_points: walk length differs from n");
  ExceedancePoints out;
  out.u_n = model.threshold(n, tau).u_n;
  out.norm_index = static_cast<std::int64_t>(
      std::floor(q_hat.value * static_cast<double>(n)));
  if (out.norm_index < 1) out.norm_index = 1;
  out.norm_a = model.marginal().norm_a(out.norm_index);
  out.norm_b = model.marginal().norm_b(out.norm_index);

  out.points.reserve(stats.first_visit_sites.size());
  for (std::size_t k = 0; k < stats.first_visit_sites.size(); ++k) {
    const double xi = model.value(stats.first_visit_sites[k]);
    const double time_frac =
        static_cast<double>(stats.distinct_visit_times[k]) / static_cast<double>(n);
    out.points.emplace_back(time_frac, (xi - out.norm_b) / out.norm_a);
    if (xi > out.u_n) ++out.count_over_threshold;
  }
  return out;
}

PoissonGof poisson_gof(std::span<const std::int64_t> counts, double mean) {
  if (counts.empty()) throw std::domain_error("poisson_gof requires counts");
  if (!(mean > 0.0)) throw std::domain_error("poisson_gof requires mean > 0");

  std::int64_t max_count = 0;
  for (auto c : counts) {
    if (c < 0) throw std::domain_error("poisson_gof requires nonnegative counts");
    max_count = std::max(max_count, c);
  }

  const double total = static_cast<double>(counts.size());
  // Poisson cell probabilities 0..max_count, then the right tail.
  std::vector<double> expected;
  std::vector<double> observed;
  std::vector<double> histogram(static_cast<std::size_t>(max_count) + 1, 0.0);
  for (auto c : counts) histogram[static_cast<std::size_t>(c)] += 1.0;

  double pmf = std::exp(-mean);  // P(X = 0)
  double cum = 0.0;
  std::vector<double> cell_probs;
  for (std::int64_t k = 0; k <= max_count; ++k) {
    cell_probs.push_back(pmf);
    cum += pmf;
    pmf *= mean / static_cast<double>(k + 1);
  }
  cell_probs.push_back(std::max(0.0, 1.0 - cum));  // tail
  histogram.push_back(0.0);

  // Merge adjacent cells left to right until every expected count >= 5.
  double acc_obs = 0.0, acc_exp = 0.0;
  for (std::size_t k = 0; k < cell_probs.size(); ++k) {
    acc_obs += histogram[k];
    acc_exp += cell_probs[k] * total;
    if (acc_exp >= 5.0) {
      observed.push_back(acc_obs);
      expected.push_back(acc_exp);
      acc_obs = acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (!expected.empty()) {
      observed.back() += acc_obs;
      expected.back() += acc_exp;
    }
  }
  if (expected.size() < 2)
    throw std::invalid_argument(
        "poisson_gof: degenerate input, cannot form two cells with expected count >= 5");

  const auto chi = stats::chi_square_gof(observed, expected);
  return PoissonGof{chi.p_value, chi.statistic, chi.df, chi.cells, mean};
}

}  // namespace rwrs
