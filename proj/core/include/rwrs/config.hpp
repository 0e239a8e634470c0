#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rwrs/extremes.hpp"

namespace rwrs {

struct ConfigError {
  int line = 0;
  std::string key;
  std::string reason;
};

struct ParsedConfig {
  std::vector<ExperimentConfig> experiments;
  std::vector<ConfigError> errors;
  bool ok() const noexcept { return errors.empty() && !experiments.empty(); }
};

// Sectioned key-value experiment description:
//
//   [name]
//   alpha = 0.5            # step tail index, in (0,1)
//   scenery = iid          # iid | gauss_ma | moving_max
//   weights = 0.6 0.8      # gauss_ma only (w_0..w_m, unit norm)
//   m = 1                  # moving_max only
//   marginal = frechet1    # frechet1 | pareto | exponential1
//   theta = 2.0            # pareto only
//   n = 100000
//   tau = 1.0
//   reps = 5000
//   mode = annealed        # quenched | annealed
//   seed = 42              # optional; CLI --seed / RWRS_SEED otherwise
//   q_reps = 200           # optional
//   schedule = k_n=100,l_n=10   # optional override for block commands
//
// All located errors are reported together rather than first-failure.
ParsedConfig parse_config(std::string_view text);

}  // namespace rwrs
