#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/steplaw.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

enum class ExperimentMode { Quenched, Annealed };

struct ScheduleOverride {
  std::optional<std::int64_t> k_n;
  std::optional<std::int64_t> l_n;
};

struct ExperimentConfig {
  std::string name = "experiment";
  double step_alpha = 0.5;
  Dependence dependence = IidDependence{};
  Marginal marginal = Marginal::frechet1();
  std::int64_t n = 0;
  double tau = 0.0;
  std::int64_t reps = 0;
  ExperimentMode mode = ExperimentMode::Annealed;
  std::uint64_t master_seed = 0;
  bool seed_from_config = false;  // seed key present in the config file
  std::int64_t q_reps = 200;  // replications for the range estimate of q
  ScheduleOverride schedule;  // consumed by the blocks/conditions commands
};

struct ExperimentResult {
  double empirical_prob = 0.0;  // fraction of reps with max over visited sites <= u_n
  double std_error = 0.0;       // binomial
  double target = 0.0;          // exp(-tau * q_hat)
  double target_se = 0.0;       // delta method through q_hat
  double z_score = 0.0;
  QEstimate q_estimate;
  double u_n = 0.0;
  std::int64_t n = 0;
  double tau = 0.0;
  std::int64_t reps = 0;
  ExperimentMode mode = ExperimentMode::Quenched;
  std::uint64_t master_seed = 0;
  // per-replication counts of distinct visited sites with xi > u_n;
  // empirical_prob is exactly the fraction of zeros here
  std::vector<std::int64_t> exceedance_counts;
  double mean_count = 0.0;
};

// One walk fixed from the master seed; scenery redrawn per replication.
ExperimentResult run_quenched(const ExperimentConfig& config, unsigned threads = 0);
ExperimentResult run_quenched(const ExperimentConfig& config, const StepLaw& law,
                              unsigned threads = 0);

// Fresh walk and fresh scenery per replication.
ExperimentResult run_annealed(const ExperimentConfig& config, unsigned threads = 0);
ExperimentResult run_annealed(const ExperimentConfig& config, const StepLaw& law,
                              unsigned threads = 0);

// Point process of first-visit exceedance marks:
// (tau_k / n, (xi(S_{tau_k}) - b_m) / a_m) with m = floor(q_hat * n).
struct ExceedancePoints {
  std::vector<std::pair<double, double>> points;
  double norm_a = 1.0;
  double norm_b = 0.0;
  std::int64_t norm_index = 0;  // floor(q_hat * n)
  std::int64_t count_over_threshold = 0;  // distinct sites with xi > u_n
  double u_n = 0.0;
};

ExceedancePoints exceedance_points(const SceneryModel& model, const WalkStats& stats,
                                   std::int64_t n, double tau, const QEstimate& q_hat);

struct PoissonGof {
  double p_value = 0.0;
  double statistic = 0.0;
  std::int64_t df = 0;
  std::size_t cells = 0;
  double mean = 0.0;
};

// Chi-square goodness of fit of integer counts against Poisson(mean); cells
// merged so every expected count is at least 5.
PoissonGof poisson_gof(std::span<const std::int64_t> counts, double mean);

}  // namespace rwrs
