#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rwrs/blocks.hpp"

using namespace rwrs;

namespace {
const RngKey kSeed = master_key(31337);

WalkStats stats_of_sites_1_to_10() {
  std::vector<std::int64_t> pos;
  for (std::int64_t k = 1; k <= 10; ++k) pos.push_back(k);
  return walk_stats(pos);
}

std::vector<std::int64_t> to_vec(std::span<const std::int64_t> s) {
  return {s.begin(), s.end()};
}
}  // namespace

TEST_CASE("decompose sites 1..10 with r_n=3, l_n=1") {
  const auto st = stats_of_sites_1_to_10();
  const auto sched = schedule_with(10, 6, 1, 0);  // r_n = floor(10/5)+1 = 3
  REQUIRE(sched.r_n == 3);
  const auto d = decompose(st, sched);
  CHECK(d.K_n() == 4);  // floor(10/3) + 1
  CHECK(to_vec(d.block(0)) == std::vector<std::int64_t>{1, 2, 3});
  CHECK(to_vec(d.block(1)) == std::vector<std::int64_t>{4, 5, 6});
  CHECK(to_vec(d.block(2)) == std::vector<std::int64_t>{7, 8, 9});
  CHECK(to_vec(d.block(3)) == std::vector<std::int64_t>{10});
  CHECK(to_vec(d.stripe(0)) == std::vector<std::int64_t>{3});
  CHECK(to_vec(d.stripe(1)) == std::vector<std::int64_t>{6});
  CHECK(to_vec(d.stripe(2)) == std::vector<std::int64_t>{9});
  // last block has size 1 >= l_n = 1, so its stripe is {10}
  CHECK(to_vec(d.stripe(3)) == std::vector<std::int64_t>{10});
}

TEST_CASE("decompose sites 1..10 with l_n=2: last stripe is empty") {
  const auto st = stats_of_sites_1_to_10();
  const auto sched = schedule_with(10, 6, 2, 0);
  const auto d = decompose(st, sched);
  CHECK(d.K_n() == 4);
  CHECK(to_vec(d.stripe(0)) == std::vector<std::int64_t>{2, 3});
  CHECK(to_vec(d.stripe(3)).empty());  // size 1 < l_n = 2
  CHECK(to_vec(d.trimmed(3)) == std::vector<std::int64_t>{10});
}

TEST_CASE("degenerate r_n > R_n yields a single block") {
  std::vector<std::int64_t> pos{5, 9, 2};
  const auto st = walk_stats(pos);
  const auto sched = schedule_with(3, 2, 1, 0);  // r_n = 3/1+1 = 4 > R_n = 3
  const auto d = decompose(st, sched);
  CHECK(d.K_n() == 1);
  CHECK(to_vec(d.block(0)) == std::vector<std::int64_t>{2, 5, 9});
}

TEST_CASE("structural invariants hold on randomized instances") {
  std::mt19937_64 gen(2718);
  std::uniform_int_distribution<std::int64_t> n_dist(100, 3000);
  const double alphas[] = {0.3, 0.5, 0.8};
  const StepLaw laws[] = {StepLaw::make(0.3), StepLaw::make(0.5), StepLaw::make(0.8)};
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);

  for (int it = 0; it < 200; ++it) {
    const std::int64_t n = n_dist(gen);
    const StepLaw& law = laws[static_cast<std::size_t>(it) % 3];
    (void)alphas;
    const auto st = walk_stats(simulate_walk(law, n, master_key(static_cast<std::uint64_t>(it))));
    const auto sched = default_schedule(model, n);
    const auto d = decompose(st, sched);

    CHECK(d.K_n() == st.range / sched.r_n + 1);
    CHECK(d.K_n() <= sched.k_n);

    std::vector<std::int64_t> reunion;
    for (std::int64_t j = 0; j < d.K_n(); ++j) {
      const auto b = d.block(j);
      if (j < d.K_n() - 1) CHECK(static_cast<std::int64_t>(b.size()) == sched.r_n);
      else CHECK(static_cast<std::int64_t>(b.size()) ==
                 st.range - (d.K_n() - 1) * sched.r_n);
      if (j + 1 < d.K_n() && !b.empty() && !d.block(j + 1).empty())
        CHECK(b.back() < d.block(j + 1).front());
      // stripe is the suffix of the block
      const auto s = d.stripe(j);
      const auto t = d.trimmed(j);
      CHECK(s.size() + t.size() == b.size());
      if (j < d.K_n() - 1) CHECK(static_cast<std::int64_t>(s.size()) ==
                                 std::min(sched.l_n, static_cast<std::int64_t>(b.size())));
      else if (static_cast<std::int64_t>(b.size()) < sched.l_n) CHECK(s.empty());
      reunion.insert(reunion.end(), b.begin(), b.end());
    }
    CHECK(reunion == st.visited_sites);

    // gap property: consecutive trimmed blocks sit more than l_n apart
    for (std::int64_t j = 0; j + 1 < d.K_n(); ++j) {
      const auto t0 = d.trimmed(j);
      const auto t1 = d.trimmed(j + 1);
      if (!t0.empty() && !t1.empty() &&
          static_cast<std::int64_t>(d.stripe(j).size()) == sched.l_n)
        CHECK(t1.front() - t0.back() > sched.l_n);
    }
  }
}

TEST_CASE("tau = 0 forces every diagnostic to zero") {
  const StepLaw law = StepLaw::make(0.5);
  const auto st = walk_stats(simulate_walk(law, 1000, master_key(5)));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  const auto sched = default_schedule(model, 1000);

  const auto l1 = lemma1_diagnostic(model, st, sched, 0.0, 500, kSeed);
  CHECK(l1.d_i == 0.0);
  CHECK(l1.d_ii == 0.0);
  CHECK(l1.d_iii == 0.0);
  CHECK(l1.p_full == 1.0);

  const QEstimate q{1.0, 0.0, QMethod::Range, 1000, 1};
  const auto l2 = lemma2_diagnostic(model, st, sched, 0.0, 500, kSeed, q);
  CHECK(l2.product == 1.0);
  CHECK(l2.target == 1.0);
}

TEST_CASE("lemma1 preconditions") {
  const StepLaw law = StepLaw::make(0.5);
  const auto st = walk_stats(simulate_walk(law, 1000, master_key(5)));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  const auto sched = default_schedule(model, 1000);
  CHECK_THROWS_AS((void)lemma1_diagnostic(model, st, sched, 1.0, 499, kSeed),
                  std::domain_error);
}

TEST_CASE("iid scenery: blockwise independence makes d_ii pure noise") {
  const StepLaw law = StepLaw::make(0.5);
  const auto st = walk_stats(simulate_walk(law, 2000, master_key(8)));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  const auto sched = default_schedule(model, 2000);
  const auto l1 = lemma1_diagnostic(model, st, sched, 1.0, 1500, derive(kSeed, 1));
  CHECK(l1.d_ii < 5.0 * l1.se_ii + 1e-12);
  // chain consistency: the three gaps dominate the end-to-end gap
  CHECK(std::fabs(l1.p_full - l1.prod_full) <= l1.d_i + l1.d_ii + l1.d_iii + 1e-12);
}

TEST_CASE("gauss-ma: trimmed blocks are independent once stripes exceed m") {
  const StepLaw law = StepLaw::make(0.5);
  const auto st = walk_stats(simulate_walk(law, 2000, master_key(12)));
  const auto model = make_scenery(GaussMaDependence{{0.6, 0.8}}, Marginal::frechet1(), kSeed);
  const auto sched = default_schedule(model, 2000);
  REQUIRE(sched.l_n > model.dependence_range());
  const auto l1 = lemma1_diagnostic(model, st, sched, 1.0, 1500, derive(kSeed, 2));
  CHECK(l1.d_ii < 5.0 * l1.se_ii + 1e-12);
}

TEST_CASE("lemma2 product tracks exp(-tau q) for iid scenery") {
  const StepLaw law = StepLaw::make(0.5);
  const std::int64_t n = 5000;
  const auto st = walk_stats(simulate_walk(law, n, master_key(14)));
  const auto model = make_scenery(IidDependence{}, Marginal::frechet1(), kSeed);
  const auto sched = default_schedule(model, n);
  // quenched product concentrates at exp(-tau R_n/n); compare against the
  // walk's own range ratio to isolate the block-product machinery
  const QEstimate q{static_cast<double>(st.range) / static_cast<double>(n), 0.0,
                    QMethod::Range, n, 1};
  const auto l2 = lemma2_diagnostic(model, st, sched, 1.0, 3000, derive(kSeed, 3), q);
  CHECK(std::fabs(l2.deviation) < 3.5 * l2.product_se);
  CHECK(l2.target == doctest::Approx(std::exp(-q.value)));
}
