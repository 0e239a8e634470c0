#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

// Symmetric integer step distribution with pmf c*|k|^-(1+alpha) on Z \ {0},
// alpha in (0,1): the canonical transient member of the symmetric alpha-stable
// domain of attraction. Sampling is exact: inverse CDF on a cached cumulative
// table up to tail_cutoff, continuous Pareto proposal with accept/reject
// beyond it, and a fair sign flip.
class StepLaw {
 public:
  static constexpr std::int64_t kDefaultTailCutoff = std::int64_t{1} << 20;

  static StepLaw make(double alpha, std::int64_t tail_cutoff = kDefaultTailCutoff);

  // Deterministic +1 drift law (q = 1, R_n = n exactly). Test oracle only;
  // not reachable from any user-facing configuration.
  static StepLaw unit_step_for_tests();

  double alpha() const noexcept { return alpha_; }
  double normalizer() const noexcept { return normalizer_; }
  std::int64_t tail_cutoff() const noexcept { return tail_cutoff_; }
  bool is_unit_step() const noexcept { return unit_step_; }

  double pmf(std::int64_t k) const;
  std::int64_t sample(CounterRng& rng) const;

  // KS distance between scaled walk endpoints n1^(-1/alpha) S_n1 and
  // n2^(-1/alpha) S_n2 over reps replications each; small values evidence
  // the stable scaling limit. Requires n1 <= n2, reps >= 100.
  double self_similarity_check(std::int64_t n1, std::int64_t n2, std::int64_t reps,
                               RngKey seed) const;

 private:
  StepLaw() = default;

  double alpha_ = 0.0;
  double s_ = 0.0;  // 1 + alpha
  double normalizer_ = 0.0;
  double zeta_ = 0.0;        // zeta(1+alpha)
  double table_mass_ = 0.0;  // sum_{k<=cutoff} k^-s
  std::int64_t tail_cutoff_ = 0;
  bool unit_step_ = false;
  std::shared_ptr<const std::vector<double>> cum_;  // prefix sums of k^-s
};

}  // namespace rwrs
