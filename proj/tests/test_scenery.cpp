#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rwrs/scenery.hpp"
#include "rwrs/special.hpp"
#include "rwrs/stats.hpp"

using namespace rwrs;

namespace {
const RngKey kSeed = master_key(777);

std::vector<double> values_on_range(const SceneryModel& model, std::int64_t begin,
                                    std::int64_t count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t s = begin; s < begin + count; ++s) out.push_back(model.value(s));
  return out;
}
}  // namespace

TEST_CASE("model validation") {
  CHECK_NOTHROW(make_scenery(IidDependence{}, Marginal::frechet1(), kSeed));
  CHECK_THROWS_AS(
      (void)make_scenery(MovingMaxDependence{1}, Marginal::pareto(2.0), kSeed),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (void)make_scenery(GaussMaDependence{{0.6, 0.9}}, Marginal::frechet1(), kSeed),
      std::domain_error);
  CHECK_THROWS_AS((void)make_scenery(MovingMaxDependence{0}, Marginal::frechet1(), kSeed),
                  std::domain_error);
  CHECK_THROWS_AS((void)Marginal::pareto(0.0), std::domain_error);

  const auto ma = make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::frechet1(), kSeed);
  CHECK(ma.dependence_range() == 1);
  CHECK(ma.lag_correlation(1) == doctest::Approx(0.48));
  CHECK(ma.lag_correlation(2) == 0.0);
}

TEST_CASE("site evaluation is deterministic and order-independent") {
  const auto model = make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::frechet1(), kSeed);
  CHECK(model.value(17) == model.value(17));

  std::vector<std::int64_t> sites;
  for (std::int64_t s = -500; s < 500; ++s) sites.push_back(s);
  std::vector<double> in_order;
  in_order.reserve(sites.size());
  for (auto s : sites) in_order.push_back(model.value(s));

  std::mt19937_64 shuffler(123);
  std::vector<std::size_t> idx(sites.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), shuffler);
  for (std::size_t i : idx) CHECK(model.value(sites[i]) == in_order[i]);
}

TEST_CASE("iid Frechet marginal passes a KS test at the 1% level") {
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  auto xs = values_on_range(model, 0, 100000);
  const double d =
      stats::ks_one_sample(std::move(xs), [](double u) { return std::exp(-1.0 / u); });
  CHECK(d < stats::ks_critical_one_sample(0.01, 100000));
}

TEST_CASE("moving-max marginal is exactly unit Frechet (KS at 1%)") {
  const auto model = make_scenery(MovingMaxDependence{1}, Marginal::frechet1(), kSeed);
  auto xs = values_on_range(model, 0, 100000);
  const double d =
      stats::ks_one_sample(std::move(xs), [](double u) { return std::exp(-1.0 / u); });
  CHECK(d < stats::ks_critical_one_sample(0.01, 100000));
}

TEST_CASE("gauss-ma marginal is uniform after the probability transform") {
  const auto model =
      make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::exponential1(), kSeed);
  auto xs = values_on_range(model, 0, 50000);
  const double d =
      stats::ks_one_sample(std::move(xs), [](double u) { return -std::expm1(-u); });
  CHECK(d < stats::ks_critical_one_sample(0.01, 50000));
}

TEST_CASE("gauss-ma latent correlations match sum w_j w_{j+lag}") {
  const auto model = make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::frechet1(), kSeed);
  const std::int64_t n = 200000;
  std::vector<double> z;
  z.reserve(static_cast<std::size_t>(n));
  for (std::int64_t s = 0; s < n; ++s)
    z.push_back(special::normal_quantile(model.marginal().cdf(model.value(s))));
  for (std::int64_t lag = 1; lag <= 3; ++lag) {
    double acc = 0.0;
    for (std::int64_t i = 0; i + lag < n; ++i)
      acc += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i + lag)];
    const double corr = acc / static_cast<double>(n - lag);
    const double se = 1.3 / std::sqrt(static_cast<double>(n));  // coarse, dependence-inflated
    CHECK(std::fabs(corr - model.lag_correlation(lag)) < 4.0 * se);
  }
}

TEST_CASE("stationarity: far-apart windows have matching mean and variance") {
  for (const Dependence& dep :
       {Dependence{IidDependence{}}, Dependence{GaussMaDependence{{0.6, 0.8}}},
        Dependence{MovingMaxDependence{1}}}) {
    const auto model = make_scenery(dep, Marginal::frechet1(), kSeed);
    const std::int64_t w = 10000;
    auto transform = [&](std::vector<double> xs) {
      for (double& x : xs) x = std::exp(-1.0 / x);  // exact unit uniform
      return xs;
    };
    const auto a = transform(values_on_range(model, 0, w));
    const auto b = transform(values_on_range(model, 1000000, w));
    const auto ma = stats::mean_stderr(a);
    const auto mb = stats::mean_stderr(b);
    // lag-1 dependence inflates the stderr by at most ~sqrt(3) here
    const double se = 2.0 * std::hypot(ma.std_error, mb.std_error);
    CHECK(std::fabs(ma.mean - mb.mean) < 4.0 * se);
  }
}

TEST_CASE("marginal tails: closed forms and domains") {
  const auto pareto = make_scenery(IidDependence{}, Marginal::pareto(1.0), kSeed);
  CHECK(pareto.marginal_tail(500.0) == doctest::Approx(0.002).epsilon(1e-14));
  CHECK_THROWS_AS((void)pareto.marginal_tail(0.5), std::domain_error);

  const auto frechet = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  const double u = 1e4;
  CHECK(std::fabs(u * frechet.marginal_tail(u) - 1.0) < 1e-4);
  CHECK_THROWS_AS((void)frechet.marginal_tail(-1.0), std::domain_error);

  const auto expo = make_scenery(IidDependence{}, Marginal::exponential1(), kSeed);
  CHECK(expo.marginal_tail(0.0) == 1.0);
  CHECK_THROWS_AS((void)expo.marginal_tail(-0.1), std::domain_error);
}

TEST_CASE("threshold: closed-form inversions") {
  const auto pareto = make_scenery(IidDependence{}, Marginal::pareto(1.0), kSeed);
  CHECK(pareto.threshold(1000, 2.0).u_n == doctest::Approx(500.0).epsilon(1e-12));

  const auto frechet = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  CHECK(frechet.threshold(100, 1.0).u_n ==
        doctest::Approx(99.49916247342217).epsilon(1e-12));

  const auto expo = make_scenery(IidDependence{}, Marginal::exponential1(), kSeed);
  const double tau = 1000.0 * std::exp(-5.0);
  CHECK(expo.threshold(1000, tau).u_n == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("threshold: tau = 0 sentinel and domain errors") {
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  CHECK(std::isinf(model.threshold(100, 0.0).u_n));
  CHECK_THROWS_AS((void)model.threshold(100, 100.0), std::domain_error);
  CHECK_THROWS_AS((void)model.threshold(100, -1.0), std::domain_error);
}

TEST_CASE("threshold exactness on random (n, tau) pairs") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> logn(2.0, 7.0), logtau(-2.0, 1.0);
  for (const Marginal& marg :
       {Marginal::frechet1(), Marginal::pareto(2.0), Marginal::exponential1()}) {
    const auto model = make_scenery(IidDependence{}, marg, kSeed);
    for (int i = 0; i < 10; ++i) {
      const auto n = static_cast<std::int64_t>(std::pow(10.0, logn(gen)));
      const double tau = std::pow(10.0, logtau(gen));
      const auto spec = model.threshold(n, tau);
      CHECK(std::fabs(static_cast<double>(n) * model.marginal_tail(spec.u_n) - tau) <=
            1e-9 * tau);
    }
  }
}

TEST_CASE("quantile and survival are inverse within 1e-9") {
  for (const Marginal& marg :
       {Marginal::frechet1(), Marginal::pareto(3.0), Marginal::exponential1()}) {
    for (double s : {1e-8, 1e-4, 0.1, 0.5, 0.9}) {
      const double u = marg.quantile_from_survival(s);
      CHECK(marg.survival(u) == doctest::Approx(s).epsilon(1e-9));
    }
  }
}
