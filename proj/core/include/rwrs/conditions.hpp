#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/scenery.hpp"

namespace rwrs {

// Blocking schedule (k_n, l_n, r_n) with the mixing-coefficient bound
// alpha_{n,l} of the scenery model it was built for. For the shipped
// m-dependent models the exact bound is 0 beyond lag m and 1 otherwise.
struct MixingSchedule {
  std::int64_t n = 0;
  std::int64_t k_n = 0;
  std::int64_t l_n = 0;
  std::int64_t r_n = 0;  // floor(n/(k_n-1)) + 1
  std::int64_t dep_range = 0;

  double alpha_bound(std::int64_t /*n*/, std::int64_t l) const {
    return l > dep_range ? 0.0 : 1.0;
  }
};

// k_n = floor(sqrt(n)), l_n = max(m+1, floor(n^(1/4))). With the exact
// m-dependent bound, n^2/k_n * alpha_{n,l_n} vanishes identically.
MixingSchedule default_schedule(const SceneryModel& model, std::int64_t n);

// Explicit (k_n, l_n); r_n computed from the defining formula.
MixingSchedule schedule_with(std::int64_t n, std::int64_t k_n, std::int64_t l_n,
                             std::int64_t dep_range);

enum class DprimeMethod { Analytic, MonteCarlo };

struct DprimeResult {
  double value = 0.0;
  double std_error = 0.0;  // 0 for closed forms
  DprimeMethod requested = DprimeMethod::Analytic;
  DprimeMethod used = DprimeMethod::Analytic;
  bool fell_back = false;  // used != requested
  std::int64_t mc_reps = 0;
  double u_n = 0.0;
  std::int64_t lag_window = 0;  // floor(n/k_n)
};

// The anti-clustering statistic n * sum_{j<=floor(n/k_n)} P(xi(0)>u_n, xi(j)>u_n)
// at the exact threshold u_n of (n, tau). Closed forms for iid and moving-max
// joints; Monte Carlo paired draws per lag for the Gaussian moving average
// (lags beyond m use the exact independent product (tau/n)^2).
DprimeResult dprime_statistic(const SceneryModel& model, std::int64_t n,
                              const MixingSchedule& schedule, double tau,
                              DprimeMethod method, std::int64_t reps, RngKey seed,
                              unsigned threads = 0);

struct ScheduleCheck {
  std::string constraint;
  std::vector<double> values;  // one per grid point
  bool pass = false;
};

struct ScheduleReport {
  std::vector<std::int64_t> n_grid;
  std::vector<ScheduleCheck> checks;
  bool all_pass = false;
};

using ScheduleRule = std::function<MixingSchedule(const SceneryModel&, std::int64_t)>;

// Checks the schedule constraints on a finite n-grid: k_n increasing,
// k_n*l_n/n decreasing toward 0, n^2/k_n * alpha_{n,l_n} decaying to 0,
// and r_n consistent with its formula. Report-only.
ScheduleReport validate_schedule(const ScheduleRule& rule,
                                 std::span<const std::int64_t> n_grid,
                                 const SceneryModel& model);

}  // namespace rwrs
