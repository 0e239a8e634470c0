#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <stdexcept>

#include "rwrs/walk.hpp"

using namespace rwrs;

TEST_CASE("unit-step walk drifts deterministically") {
  const StepLaw law = StepLaw::unit_step_for_tests();
  const auto walk = simulate_walk(law, 50, master_key(1));
  for (std::int64_t k = 0; k < 50; ++k)
    CHECK(walk.positions[static_cast<std::size_t>(k)] == k + 1);
  const auto st = walk_stats(walk);
  CHECK(st.range == 50);
  CHECK_FALSE(st.returned_to_origin);
  for (std::int64_t k = 0; k < 50; ++k) {
    CHECK(st.distinct_visit_times[static_cast<std::size_t>(k)] == k + 1);
    CHECK(st.first_visit_sites[static_cast<std::size_t>(k)] == k + 1);
  }
}

TEST_CASE("simulate_walk is deterministic in (law, n, seed)") {
  const StepLaw law = StepLaw::make(0.5);
  const auto a = simulate_walk(law, 3000, master_key(9));
  const auto b = simulate_walk(law, 3000, master_key(9));
  CHECK(a.positions == b.positions);
  const auto c = simulate_walk(law, 3000, master_key(10));
  CHECK(a.positions != c.positions);
  CHECK_THROWS_AS((void)simulate_walk(law, 0, master_key(1)), std::domain_error);
}

TEST_CASE("walk_stats on tiny fixed paths") {
  {
    const std::vector<std::int64_t> pos{1, -1, 1};
    const auto st = walk_stats(pos);
    CHECK(st.range == 2);
    CHECK(st.distinct_visit_times == std::vector<std::int64_t>{1, 2});
    CHECK_FALSE(st.returned_to_origin);
  }
  {
    const std::vector<std::int64_t> pos{2, 0, 2};
    const auto st = walk_stats(pos);
    CHECK(st.range == 2);
    CHECK(st.returned_to_origin);
    CHECK(st.visited_sites == std::vector<std::int64_t>{0, 2});
  }
}

TEST_CASE("walk stats invariants on random walks") {
  const StepLaw law = StepLaw::make(0.5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto walk = simulate_walk(law, 2000, master_key(seed));
    const auto st = walk_stats(walk);
    CHECK(st.range <= walk.n);
    CHECK(st.range == static_cast<std::int64_t>(st.visited_sites.size()));
    CHECK(st.distinct_visit_times.front() == 1);
    CHECK(st.distinct_visit_times.back() <= walk.n);
    for (std::size_t i = 1; i < st.distinct_visit_times.size(); ++i)
      CHECK(st.distinct_visit_times[i] > st.distinct_visit_times[i - 1]);
    for (std::size_t i = 1; i < st.visited_sites.size(); ++i)
      CHECK(st.visited_sites[i] > st.visited_sites[i - 1]);
  }
}

TEST_CASE("fraction of positive endpoints is near 1/2 (symmetry)") {
  const StepLaw law = StepLaw::make(0.5);
  const std::int64_t reps = 2000, n = 10000;
  std::int64_t positive = 0;
  for (std::int64_t r = 0; r < reps; ++r) {
    CounterRng rng(derive(master_key(515), static_cast<std::uint64_t>(r)));
    std::int64_t s = 0;
    for (std::int64_t k = 0; k < n; ++k) s += law.sample(rng);
    if (s > 0) ++positive;
  }
  const double se = std::sqrt(0.25 / static_cast<double>(reps));  // binomial oracle
  CHECK(std::fabs(static_cast<double>(positive) / reps - 0.5) < 4.0 * se);
}

TEST_CASE("q estimators are exact for the unit-step law") {
  const StepLaw law = StepLaw::unit_step_for_tests();
  const auto range = estimate_q_range(law, 1000, 2, master_key(4));
  CHECK(range.value == 1.0);
  CHECK(range.std_error == 0.0);
  const auto surv = estimate_q_survival(law, 1000, 2, master_key(4));
  CHECK(surv.value == 1.0);
}

TEST_CASE("q estimator preconditions") {
  const StepLaw law = StepLaw::make(0.5);
  CHECK_THROWS_AS((void)estimate_q_range(law, 999, 10, master_key(1)), std::domain_error);
  CHECK_THROWS_AS((void)estimate_q_range(law, 2000, 1, master_key(1)), std::domain_error);
  CHECK_THROWS_AS((void)estimate_q_survival(law, 999, 10, master_key(1)), std::domain_error);
}

TEST_CASE("survival estimate is monotone in the horizon on common seeds") {
  const StepLaw law = StepLaw::make(0.5);
  const auto short_run = estimate_q_survival(law, 1000, 400, master_key(21));
  const auto long_run = estimate_q_survival(law, 4000, 400, master_key(21));
  CHECK(long_run.value <= short_run.value);
}

TEST_CASE("range and survival estimates agree within 3 combined sigma") {
  const StepLaw law = StepLaw::make(0.5);
  const auto range = estimate_q_range(law, 10000, 100, master_key(31));
  const auto surv = estimate_q_survival(law, 10000, 2000, master_key(32));
  // survival is upward biased at finite horizon, so allow the bias direction:
  // |difference| within 3 sigma plus a coarse bias allowance
  const double se = std::hypot(range.std_error, surv.std_error);
  CHECK(surv.value + 3.0 * se > range.value);
  CHECK(std::fabs(surv.value - range.value) < 3.0 * se + 0.03);
}
