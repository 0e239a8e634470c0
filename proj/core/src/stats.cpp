#include "rwrs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwrs/special.hpp"

namespace rwrs::stats {

MeanStderr mean_stderr(std::span<const double> xs) {
  if (xs.empty()) throw std::domain_error("mean_stderr: empty sample");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::domain_error("ks_one_sample: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

namespace {
double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("ks critical: alpha in (0,1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}
}  // namespace

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return ks_coefficient(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

double ks_critical_one_sample(double alpha, std::size_t n) {
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

ChiSquare chi_square_gof(std::span<const double> observed,
                         std::span<const double> expected,
                         std::int64_t extra_constraints) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::domain_error("chi_square_gof: mismatched or empty cells");
  ChiSquare out;
  out.cells = observed.size();
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::domain_error("chi_square_gof: expected cell <= 0");
    const double d = observed[i] - expected[i];
    out.statistic += d * d / expected[i];
  }
  out.df = static_cast<std::int64_t>(observed.size()) - 1 - extra_constraints;
  if (out.df < 1) throw std::domain_error("chi_square_gof: no degrees of freedom");
  out.p_value = special::chi_square_sf(out.statistic, static_cast<double>(out.df));
  return out;
}

}  // namespace rwrs::stats
