#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rwrs/special.hpp"
#include "rwrs/stats.hpp"
#include "rwrs/steplaw.hpp"

using namespace rwrs;

TEST_CASE("normalizer equals 1/(2 zeta(1+alpha))") {
  // zeta(1.5) = 2.6123753486854883 (frozen 30-digit reference)
  const StepLaw law = StepLaw::make(0.5);
  CHECK(law.normalizer() == doctest::Approx(0.19139669199971328).epsilon(1e-12));
  CHECK(law.normalizer() ==
        doctest::Approx(1.0 / (2.0 * special::zeta(1.5))).epsilon(1e-14));
}

TEST_CASE("alpha outside (0,1) is rejected") {
  CHECK_THROWS_AS((void)StepLaw::make(1.2), std::domain_error);
  CHECK_THROWS_AS((void)StepLaw::make(0.0), std::domain_error);
  CHECK_THROWS_AS((void)StepLaw::make(-0.3), std::domain_error);
  CHECK_THROWS_AS((void)StepLaw::make(1.0), std::domain_error);
}

TEST_CASE("pmf: support, symmetry, exact power ratios") {
  const StepLaw law = StepLaw::make(0.5);
  CHECK(law.pmf(0) == 0.0);
  CHECK(law.pmf(1) == doctest::Approx(law.normalizer()).epsilon(1e-15));
  CHECK(law.pmf(3) == law.pmf(-3));
  // 4^(-3/2) = 1/8 exactly
  CHECK(law.pmf(4) == doctest::Approx(law.pmf(1) / 8.0).epsilon(1e-14));
  for (std::int64_t k = 1; k <= 10000; ++k) {
    if (law.pmf(k) != law.pmf(-k)) {
      FAIL("pmf asymmetry at k=", k);
    }
  }
}

TEST_CASE("pmf sums to one: table mass plus analytic tail") {
  const double alpha = 0.5;
  const StepLaw law = StepLaw::make(alpha);
  const std::int64_t cutoff = 1'000'000;
  double sum = 0.0;
  for (std::int64_t k = cutoff; k >= 1; --k) sum += law.pmf(k);
  const double tail = law.normalizer() * special::zeta_tail(1.0 + alpha, cutoff);
  CHECK(2.0 * (sum + tail) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log pmf slope is -(1+alpha)") {
  const StepLaw law = StepLaw::make(0.5);
  // least squares on log pmf vs log k over k in [1e2, 1e5]
  std::vector<double> xs, ys;
  for (std::int64_t k = 100; k <= 100000; k *= 2) {
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(law.pmf(k)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  CHECK(sxy / sxx == doctest::Approx(-1.5).epsilon(1e-6));
}

TEST_CASE("sampler determinism: same seed, same draws") {
  const StepLaw law = StepLaw::make(0.5);
  CounterRng a(master_key(11)), b(master_key(11));
  for (int i = 0; i < 20000; ++i) CHECK(law.sample(a) == law.sample(b));
}

TEST_CASE("sampler frequency of k=1 and sign balance over 1e6 draws") {
  const StepLaw law = StepLaw::make(0.5);
  CounterRng rng(master_key(1001));
  const std::int64_t n = 1'000'000;
  std::int64_t ones = 0, sign_sum = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t k = law.sample(rng);
    if (k == 1) ++ones;
    sign_sum += (k > 0) ? 1 : -1;
  }
  const double p1 = law.pmf(1);
  const double se = std::sqrt(p1 * (1.0 - p1) / static_cast<double>(n));  // binomial oracle
  CHECK(std::fabs(static_cast<double>(ones) / n - p1) < 4.0 * se);
  CHECK(std::fabs(static_cast<double>(sign_sum) / n) < 4.0 / std::sqrt(static_cast<double>(n)));
}

namespace {

// chi-square of draws against pmf on cells {-50..-1, 1..50, tail}
double sampler_gof_pvalue(const StepLaw& law, std::int64_t n, std::uint64_t seed) {
  CounterRng rng(master_key(seed));
  std::vector<double> observed(102, 0.0);  // k = -50..50 at 0..100, tail at 101
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t k = law.sample(rng);
    if (k >= -50 && k <= 50)
      observed[static_cast<std::size_t>(k + 50)] += 1.0;  // slot 50 (k=0) stays empty
    else
      observed[101] += 1.0;
  }
  observed.erase(observed.begin() + 50);  // remove the impossible k=0 cell
  std::vector<double> expected;
  double mass = 0.0;
  for (std::int64_t k = -50; k <= 50; ++k) {
    if (k == 0) continue;
    expected.push_back(law.pmf(k) * static_cast<double>(n));
    mass += law.pmf(k);
  }
  expected.push_back((1.0 - mass) * static_cast<double>(n));
  return rwrs::stats::chi_square_gof(observed, expected).p_value;
}

}  // namespace

TEST_CASE("sampler chi-square GOF at the 1% level") {
  const StepLaw law = StepLaw::make(0.5);
  CHECK(sampler_gof_pvalue(law, 1'000'000, 77) > 0.01);
}

TEST_CASE("tail rejection path is exact (tiny cutoff forces it)") {
  // with cutoff 8 every |k| > 8 comes from the Pareto accept/reject branch
  const StepLaw law = StepLaw::make(0.5, 8);
  CHECK(sampler_gof_pvalue(law, 400'000, 78) > 0.01);
  const StepLaw law3 = StepLaw::make(0.3, 8);
  CHECK(sampler_gof_pvalue(law3, 400'000, 79) > 0.01);
}

TEST_CASE("self-similarity: identical (n, seed) gives zero distance") {
  const StepLaw law = StepLaw::make(0.5);
  CHECK(law.self_similarity_check(500, 500, 120, master_key(3)) == doctest::Approx(0.0));
}

TEST_CASE("self-similarity preconditions") {
  const StepLaw law = StepLaw::make(0.5);
  CHECK_THROWS_AS((void)law.self_similarity_check(1000, 100, 200, master_key(3)),
                  std::domain_error);
  CHECK_THROWS_AS((void)law.self_similarity_check(100, 1000, 50, master_key(3)),
                  std::domain_error);
}
