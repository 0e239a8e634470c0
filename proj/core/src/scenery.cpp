#include "rwrs/scenery.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwrs/special.hpp"

namespace rwrs {

namespace {
constexpr std::uint64_t kTagUniform = 0x5345454eu;   // iid site uniforms
constexpr std::uint64_t kTagGauss = 0x4741555353u;   // latent normals
constexpr std::uint64_t kTagMovMax = 0x4d4f564du;    // Frechet base values
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Marginal Marginal::pareto(double theta) {
  if (!(theta > 0.0)) throw std::domain_error("Pareto marginal requires theta > 0");
  return {MarginalKind::Pareto, theta};
}

double Marginal::survival(double u) const {
  switch (kind) {
    case MarginalKind::Frechet1:
      if (!(u > 0.0)) throw std::domain_error("Frechet1 survival requires u > 0");
      return -std::expm1(-1.0 / u);
    case MarginalKind::Pareto:
      if (!(u >= 1.0)) throw std::domain_error("Pareto survival requires u >= 1");
      return std::pow(u, -theta);
    case MarginalKind::Exponential1:
      if (!(u >= 0.0)) throw std::domain_error("Exponential1 survival requires u >= 0");
      return std::exp(-u);
  }
  throw std::logic_error("unreachable marginal kind");
}

double Marginal::cdf(double u) const { return 1.0 - survival(u); }

double Marginal::quantile_from_survival(double s) const {
  if (!(s > 0.0 && s < 1.0)) {
    if (s == 0.0) return kInf;
    throw std::domain_error("quantile_from_survival requires s in (0,1)");
  }
  switch (kind) {
    case MarginalKind::Frechet1:
      return -1.0 / std::log1p(-s);
    case MarginalKind::Pareto:
      return std::pow(s, -1.0 / theta);
    case MarginalKind::Exponential1:
      return -std::log(s);
  }
  throw std::logic_error("unreachable marginal kind");
}

double Marginal::norm_a(std::int64_t n) const {
  switch (kind) {
    case MarginalKind::Frechet1:
      return static_cast<double>(n);
    case MarginalKind::Pareto:
      return std::pow(static_cast<double>(n), 1.0 / theta);
    case MarginalKind::Exponential1:
      return 1.0;
  }
  throw std::logic_error("unreachable marginal kind");
}

double Marginal::norm_b(std::int64_t n) const {
  return kind == MarginalKind::Exponential1 ? std::log(static_cast<double>(n)) : 0.0;
}

std::string Marginal::name() const {
  switch (kind) {
    case MarginalKind::Frechet1:
      return "frechet1";
    case MarginalKind::Pareto:
      return "pareto";
    case MarginalKind::Exponential1:
      return "exponential1";
  }
  return "?";
}

SceneryModel::SceneryModel(Dependence dependence, Marginal marginal, RngKey seed)
    : dependence_(std::move(dependence)), marginal_(marginal), seed_(seed) {
  if (marginal_.kind == MarginalKind::Pareto && !(marginal_.theta > 0.0))
    throw std::domain_error("Pareto marginal requires theta > 0");

  if (auto* ma = std::get_if<GaussMaDependence>(&dependence_)) {
    if (ma->weights.size() < 2)
      throw std::domain_error("GaussMA requires m >= 1 (at least two weights)");
    double norm2 = 0.0;
    for (double w : ma->weights) {
      if (!std::isfinite(w)) throw std::domain_error("GaussMA weights must be finite");
      norm2 += w * w;
    }
    if (std::fabs(norm2 - 1.0) > 1e-6)
      throw std::domain_error("GaussMA weights must have unit norm (|sum w^2 - 1| <= 1e-6)");
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& w : ma->weights) w *= scale;
    dep_range_ = static_cast<std::int64_t>(ma->weights.size()) - 1;
    double r1 = 0.0;
    for (std::size_t j = 0; j + 1 < ma->weights.size(); ++j)
      r1 += ma->weights[j] * ma->weights[j + 1];
    if (std::fabs(r1) >= 1.0)
      throw std::invalid_argument("GaussMA lag-1 correlation is degenerate (|r_1| >= 1)");
  } else if (auto* mm = std::get_if<MovingMaxDependence>(&dependence_)) {
    if (mm->m < 1) throw std::domain_error("MovingMax requires m >= 1");
    if (marginal_.kind != MarginalKind::Frechet1)
      throw std::invalid_argument(
          "MovingMax supports only the frechet1 marginal (base scale 1/(m+1))");
    dep_range_ = mm->m;
    movmax_scale_ = 1.0 / static_cast<double>(mm->m + 1);
  }
}

double SceneryModel::value(std::int64_t site) const {
  if (std::holds_alternative<IidDependence>(dependence_)) {
    return marginal_.quantile_from_survival(site_unit(seed_, site, kTagUniform));
  }
  if (const auto* ma = std::get_if<GaussMaDependence>(&dependence_)) {
    double z = 0.0;
    for (std::size_t j = 0; j < ma->weights.size(); ++j) {
      const double g = special::normal_quantile(
          site_unit(seed_, site + static_cast<std::int64_t>(j), kTagGauss));
      z += ma->weights[j] * g;
    }
    return marginal_.quantile_from_survival(special::normal_sf(z));
  }
  const auto& mm = std::get<MovingMaxDependence>(dependence_);
  double best = -kInf;
  for (std::int64_t j = 0; j <= mm.m; ++j) {
    const double u = site_unit(seed_, site + j, kTagMovMax);
    const double z = -movmax_scale_ / std::log(u);  // Frechet, scale 1/(m+1)
    if (z > best) best = z;
  }
  return best;
}

ThresholdSpec SceneryModel::threshold(std::int64_t n, double tau) const {
  if (n < 1) throw std::domain_error("threshold requires n >= 1");
  if (tau < 0.0) throw std::domain_error("threshold requires tau >= 0");
  if (tau >= static_cast<double>(n)) throw std::domain_error("threshold requires tau < n");
  if (tau == 0.0) return ThresholdSpec{n, tau, kInf};
  const double s = tau / static_cast<double>(n);
  const double u = marginal_.quantile_from_survival(s);
  const double check = static_cast<double>(n) * marginal_.survival(u);
  if (std::fabs(check - tau) > 1e-9 * tau)
    throw std::runtime_error("threshold inversion failed the exactness check");
  return ThresholdSpec{n, tau, u};
}

double SceneryModel::lag_correlation(std::int64_t lag) const {
  if (lag < 0) lag = -lag;
  if (const auto* ma = std::get_if<GaussMaDependence>(&dependence_)) {
    double r = 0.0;
    for (std::size_t j = 0; j + static_cast<std::size_t>(lag) < ma->weights.size(); ++j)
      r += ma->weights[j] * ma->weights[j + static_cast<std::size_t>(lag)];
    return r;
  }
  return lag == 0 ? 1.0 : 0.0;
}

std::string SceneryModel::dependence_name() const {
  if (std::holds_alternative<IidDependence>(dependence_)) return "iid";
  if (std::holds_alternative<GaussMaDependence>(dependence_)) return "gauss_ma";
  return "moving_max";
}

SceneryModel SceneryModel::with_seed(RngKey seed) const {
  SceneryModel copy = *this;
  copy.seed_ = seed;
  return copy;
}

}  // namespace rwrs
