#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/conditions.hpp"
#include "rwrs/rng.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/walk.hpp"

namespace rwrs {

// Partition of the sorted visited sites into K_n consecutive blocks of size
// r_n (last block takes the remainder, possibly empty) with the l_n largest
// sites of each block marked as its stripe. The last stripe is empty when
// the last block has fewer than l_n sites.
class BlockDecomposition {
 public:
  BlockDecomposition(std::vector<std::int64_t> sorted_sites, const MixingSchedule& schedule);

  std::int64_t K_n() const noexcept { return K_n_; }
  std::int64_t r_n() const noexcept { return r_n_; }
  std::int64_t l_n() const noexcept { return l_n_; }
  std::int64_t k_n() const noexcept { return k_n_; }
  std::int64_t range() const noexcept { return static_cast<std::int64_t>(sites_.size()); }
  std::span<const std::int64_t> sorted_sites() const noexcept { return sites_; }

  // 0-based block index j in [0, K_n)
  std::span<const std::int64_t> block(std::int64_t j) const;
  std::span<const std::int64_t> stripe(std::int64_t j) const;   // suffix of block(j)
  std::span<const std::int64_t> trimmed(std::int64_t j) const;  // block(j) minus stripe(j)

 private:
  std::vector<std::int64_t> sites_;
  std::int64_t r_n_ = 0, l_n_ = 0, k_n_ = 0, K_n_ = 0;
};

BlockDecomposition decompose(const WalkStats& stats, const MixingSchedule& schedule);

// Monte Carlo estimates over scenery redraws on a fixed visited-site set.
// All probabilities are estimated from the same redraws (common random
// numbers), so the lemma diagnostics are differences of coupled estimates.
struct Lemma1Result {
  double d_i = 0.0, d_ii = 0.0, d_iii = 0.0;
  double se_i = 0.0, se_ii = 0.0, se_iii = 0.0;  // jackknife standard errors
  double p_full = 0.0;       // P(M over all sites <= u_n)
  double p_trimmed = 0.0;    // P(M over sites minus stripes <= u_n)
  double prod_trimmed = 0.0; // prod_j P(M over trimmed block j <= u_n)
  double prod_full = 0.0;    // prod_j P(M over block j <= u_n)
  double u_n = 0.0;
  std::int64_t reps = 0;
};

Lemma1Result lemma1_diagnostic(const SceneryModel& model, const WalkStats& stats,
                               const MixingSchedule& schedule, double tau,
                               std::int64_t reps, RngKey seed, unsigned threads = 0);

struct Lemma2Result {
  double product = 0.0;     // prod_j estimated P(M_{B_j} <= u_n)
  double product_se = 0.0;  // delta method over independent block estimates
  double target = 0.0;      // exp(-tau * q_hat)
  double target_se = 0.0;
  double deviation = 0.0;   // product - target
  double combined_se = 0.0;
  double u_n = 0.0;
  std::int64_t reps = 0;
};

// q_hat should come from estimate_q_range (the range identity).
Lemma2Result lemma2_diagnostic(const SceneryModel& model, const WalkStats& stats,
                               const MixingSchedule& schedule, double tau,
                               std::int64_t reps, RngKey seed, const QEstimate& q_hat,
                               unsigned threads = 0);

}  // namespace rwrs
