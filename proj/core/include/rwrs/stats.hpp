#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rwrs::stats {

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean with its standard error (sample sd / sqrt(n)).
MeanStderr mean_stderr(std::span<const double> xs);

// Two-sample Kolmogorov-Smirnov distance sup |F1 - F2|. Ties handled by
// advancing both empirical CDFs through equal values before comparing.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample KS distance of data against a continuous CDF.
double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf);

// Asymptotic KS critical values: reject at level alpha when D exceeds them.
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);
double ks_critical_one_sample(double alpha, std::size_t n);

struct ChiSquare {
  double statistic = 0.0;
  std::int64_t df = 0;
  double p_value = 1.0;
  std::size_t cells = 0;
};

// Pearson chi-square of observed counts against expected counts
// (same length, expected > 0). df = cells - 1 - extra_constraints.
ChiSquare chi_square_gof(std::span<const double> observed,
                         std::span<const double> expected,
                         std::int64_t extra_constraints = 0);

}  // namespace rwrs::stats
