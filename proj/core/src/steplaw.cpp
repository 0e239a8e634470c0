#include "rwrs/steplaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rwrs/special.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

namespace {

// |k|^-s via exp2/log2; exact for powers of two, pow-accurate elsewhere.
inline double power_weight(double k, double s) { return std::exp2(-s * std::log2(k)); }

// Positions downstream live in int64; tail draws beyond this bound are
// redrawn (conditioning with probability < 2^-20 of a tail draw).
constexpr double kMaxStep = 0x1.0p61;

}  // namespace

StepLaw StepLaw::make(double alpha, std::int64_t tail_cutoff) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("step law tail index alpha must lie in (0,1)");
  if (tail_cutoff < 1) throw std::domain_error("step law tail_cutoff must be >= 1");

  StepLaw law;
  law.alpha_ = alpha;
  law.s_ = 1.0 + alpha;
  law.tail_cutoff_ = tail_cutoff;

  auto cum = std::make_shared<std::vector<double>>();
  cum->resize(static_cast<std::size_t>(tail_cutoff));
  // compensated prefix sums keep every cumulative entry accurate
  double sum = 0.0, comp = 0.0;
  for (std::int64_t k = 1; k <= tail_cutoff; ++k) {
    const double w = power_weight(static_cast<double>(k), law.s_);
    const double y = w - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    (*cum)[static_cast<std::size_t>(k - 1)] = sum;
  }
  law.table_mass_ = sum;
  law.cum_ = std::move(cum);
  law.zeta_ = special::zeta(law.s_);
  law.normalizer_ = 1.0 / (2.0 * law.zeta_);
  return law;
}

StepLaw StepLaw::unit_step_for_tests() {
  StepLaw law;
  law.unit_step_ = true;
  law.tail_cutoff_ = 1;
  return law;
}

double StepLaw::pmf(std::int64_t k) const {
  if (unit_step_) return k == 1 ? 1.0 : 0.0;
  if (k == 0) return 0.0;
  const double a = std::fabs(static_cast<double>(k));
  return normalizer_ * power_weight(a, s_);
}

std::int64_t StepLaw::sample(CounterRng& rng) const {
  if (unit_step_) return 1;
  const std::uint64_t word = rng.next_u64();
  const bool negative = (word & 1u) != 0;
  const double u = u64_to_unit(word);
  const double y = u * zeta_;  // target cumulative mass on the half line

  std::int64_t k;
  const std::vector<double>& cum = *cum_;
  if (y <= cum.back()) {
    // Small steps dominate; probe a cache-resident prefix first.
    constexpr std::size_t kPrefix = 1024;
    const std::size_t limit = std::min(kPrefix, cum.size());
    const double* first = cum.data();
    const double* last = (y <= cum[limit - 1]) ? first + limit : first + cum.size();
    k = (std::lower_bound(first, last, y) - first) + 1;
  } else {
    // Tail: continuous Pareto proposal x^-s majorizes the step pmf on each
    // cell (ceil(x) = k), so accept/reject is exact.
    const double inv_alpha = 1.0 / alpha_;
    const double cutoff = static_cast<double>(tail_cutoff_);
    for (;;) {
      const double v = rng.next_unit();
      const double x = cutoff * std::pow(v, -inv_alpha);
      if (!(x < kMaxStep)) continue;
      double kd = std::ceil(x);
      if (kd <= cutoff) kd = cutoff + 1.0;
      const double w = rng.next_unit();
      if (w <= power_weight(x / kd, -s_)) {  // (x/kd)^s
        k = static_cast<std::int64_t>(kd);
        break;
      }
    }
  }
  return negative ? -k : k;
}

double StepLaw::self_similarity_check(std::int64_t n1, std::int64_t n2,
                                      std::int64_t reps, RngKey seed) const {
  if (n1 < 1 || n1 > n2) throw std::domain_error("self_similarity_check requires 1 <= n1 <= n2");
  if (reps < 100) throw std::domain_error("self_similarity_check requires reps >= 100");
  if (unit_step_) throw std::domain_error("self_similarity_check needs a power-law step");

  const double inv_alpha = 1.0 / alpha_;
  auto scaled_endpoints = [&](std::int64_t n, std::uint64_t tag) {
    std::vector<double> out(static_cast<std::size_t>(reps));
    const double scale = std::pow(static_cast<double>(n), -inv_alpha);
    for (std::int64_t r = 0; r < reps; ++r) {
      CounterRng rng(derive(seed, static_cast<std::uint64_t>(r), tag));
      std::int64_t s = 0;
      for (std::int64_t i = 0; i < n; ++i) s += sample(rng);
      out[static_cast<std::size_t>(r)] = scale * static_cast<double>(s);
    }
    return out;
  };
  // tag by n so that n1 == n2 reuses identical streams
  return stats::ks_two_sample(scaled_endpoints(n1, static_cast<std::uint64_t>(n1)),
                              scaled_endpoints(n2, static_cast<std::uint64_t>(n2)));
}

}  // namespace rwrs
