#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rwrs/rng.hpp"

namespace rwrs {

enum class MarginalKind { Frechet1, Pareto, Exponential1 };

// Marginal of the scenery variables, with exact closed-form survival and
// quantile functions.
//   Frechet1:     P(xi > u) = 1 - exp(-1/u),  u > 0
//   Pareto theta: P(xi > u) = u^-theta,       u >= 1
//   Exponential1: P(xi > u) = exp(-u),        u >= 0
struct Marginal {
  MarginalKind kind = MarginalKind::Frechet1;
  double theta = 1.0;  // Pareto shape

  static Marginal frechet1() { return {MarginalKind::Frechet1, 1.0}; }
  static Marginal pareto(double theta);
  static Marginal exponential1() { return {MarginalKind::Exponential1, 1.0}; }

  double survival(double u) const;             // domain-checked P(xi > u)
  double cdf(double u) const;
  double quantile_from_survival(double s) const;  // inverse of survival on (0,1)

  // Classical norming constants for maxima of n iid copies.
  double norm_a(std::int64_t n) const;
  double norm_b(std::int64_t n) const;

  std::string name() const;
};

struct IidDependence {};

// m-dependent Gaussian moving average: latent Z_k = sum_j w_j G_{k+j} with
// iid standard normals G and sum w_j^2 = 1; xi(k) is Z_k pushed through the
// marginal quantile. Satisfies D and D' (extremal index 1).
struct GaussMaDependence {
  std::vector<double> weights;  // w_0..w_m
};

// Moving maximum of window m+1 over iid Frechet(scale 1/(m+1)) base values:
// exact unit-Frechet marginal, satisfies D but violates D' (clusters of
// exceedances; extremal index 1/(m+1)). Negative control.
struct MovingMaxDependence {
  std::int64_t m = 1;
};

using Dependence = std::variant<IidDependence, GaussMaDependence, MovingMaxDependence>;

struct ThresholdSpec {
  std::int64_t n = 0;
  double tau = 0.0;
  double u_n = 0.0;  // +infinity when tau == 0
};

// Stationary scenery over Z with lazy, deterministic, random-access site
// evaluation: values are pure functions of (seed, site).
class SceneryModel {
 public:
  SceneryModel(Dependence dependence, Marginal marginal, RngKey seed);

  double value(std::int64_t site) const;
  double marginal_tail(double u) const { return marginal_.survival(u); }

  // Exact threshold with n * P(xi > u_n) = tau; tau = 0 maps to +infinity.
  ThresholdSpec threshold(std::int64_t n, double tau) const;

  std::int64_t dependence_range() const noexcept { return dep_range_; }  // 0 for iid
  double lag_correlation(std::int64_t lag) const;  // latent Gaussian correlation
  const Marginal& marginal() const noexcept { return marginal_; }
  const Dependence& dependence() const noexcept { return dependence_; }
  RngKey seed() const noexcept { return seed_; }
  std::string dependence_name() const;

  SceneryModel with_seed(RngKey seed) const;

 private:
  Dependence dependence_;
  Marginal marginal_;
  RngKey seed_;
  std::int64_t dep_range_ = 0;
  double movmax_scale_ = 0.0;  // 1/(m+1) for moving max
};

inline SceneryModel make_scenery(Dependence dependence, Marginal marginal, RngKey seed) {
  return SceneryModel(std::move(dependence), marginal, seed);
}

}  // namespace rwrs
