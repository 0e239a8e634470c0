#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/rng.hpp"
#include "rwrs/steplaw.hpp"

namespace rwrs {

struct WalkRealization {
  std::vector<std::int64_t> positions;  // S_1..S_n
  std::int64_t n = 0;
  RngKey seed;
};

struct WalkStats {
  std::int64_t range = 0;                           // distinct sites among S_1..S_n
  std::vector<std::int64_t> distinct_visit_times;   // tau_k, strictly increasing, 1-based
  std::vector<std::int64_t> first_visit_sites;      // S_{tau_k}, same order
  std::vector<std::int64_t> visited_sites;          // the same sites, sorted ascending
  bool returned_to_origin = false;                  // exists k <= n with S_k = 0
  std::int64_t n = 0;
};

enum class QMethod { Range, Survival };

struct QEstimate {
  double value = 0.0;
  double std_error = 0.0;
  QMethod method = QMethod::Range;
  std::int64_t n_or_horizon = 0;
  std::int64_t reps = 0;
};

WalkRealization simulate_walk(const StepLaw& law, std::int64_t n, RngKey seed);

WalkStats walk_stats(std::span<const std::int64_t> positions);
WalkStats walk_stats(const WalkRealization& walk);

// q via the range identity: mean of R_n/n over independent walks.
QEstimate estimate_q_range(const StepLaw& law, std::int64_t n, std::int64_t reps,
                           RngKey seed, unsigned threads = 0);

// q via truncated survival: fraction of walks with S_k != 0 for all
// k <= horizon. Upward biased and nonincreasing in horizon; the bias is
// bounded in practice by doubling the horizon at a fixed seed.
QEstimate estimate_q_survival(const StepLaw& law, std::int64_t horizon, std::int64_t reps,
                              RngKey seed, unsigned threads = 0);

}  // namespace rwrs
