#include "rwrs/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

WalkRealization simulate_walk(const StepLaw& law, std::int64_t n, RngKey seed) {
  if (n < 1) throw std::domain_error("simulate_walk requires n >= 1");
  WalkRealization walk;
  walk.n = n;
  walk.seed = seed;
  walk.positions.resize(static_cast<std::size_t>(n));
  CounterRng rng(seed);
  std::int64_t s = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    s += law.sample(rng);
    walk.positions[static_cast<std::size_t>(k)] = s;
  }
  return walk;
}

WalkStats walk_stats(std::span<const std::int64_t> positions) {
  WalkStats st;
  st.n = static_cast<std::int64_t>(positions.size());
  std::unordered_set<std::int64_t> seen;
  seen.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const std::int64_t site = positions[i];
    if (site == 0) st.returned_to_origin = true;
    if (seen.insert(site).second) {
      st.distinct_visit_times.push_back(static_cast<std::int64_t>(i + 1));
      st.first_visit_sites.push_back(site);
    }
  }
  st.range = static_cast<std::int64_t>(st.first_visit_sites.size());
  st.visited_sites = st.first_visit_sites;
  std::sort(st.visited_sites.begin(), st.visited_sites.end());
  return st;
}

WalkStats walk_stats(const WalkRealization& walk) {
  return walk_stats(std::span<const std::int64_t>(walk.positions));
}

QEstimate estimate_q_range(const StepLaw& law, std::int64_t n, std::int64_t reps,
                           RngKey seed, unsigned threads) {
  if (n < 1000) throw std::domain_error("estimate_q_range requires n >= 1000");
  if (reps < 2) throw std::domain_error("estimate_q_range requires reps >= 2");

  std::vector<double> ratios(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t begin, std::size_t end) {
    std::unordered_set<std::int64_t> seen;
    seen.reserve(static_cast<std::size_t>(n));
    for (std::size_t r = begin; r < end; ++r) {
      seen.clear();
      CounterRng rng(derive(seed, r));
      std::int64_t s = 0;
      for (std::int64_t k = 0; k < n; ++k) {
        s += law.sample(rng);
        seen.insert(s);
      }
      ratios[r] = static_cast<double>(seen.size()) / static_cast<double>(n);
    }
  });

  const auto ms = stats::mean_stderr(ratios);
  return QEstimate{ms.mean, ms.std_error, QMethod::Range, n, reps};
}

QEstimate estimate_q_survival(const StepLaw& law, std::int64_t horizon, std::int64_t reps,
                              RngKey seed, unsigned threads) {
  if (horizon < 1000) throw std::domain_error("estimate_q_survival requires horizon >= 1000");
  if (reps < 2) throw std::domain_error("estimate_q_survival requires reps >= 2");

  std::vector<unsigned char> alive(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      CounterRng rng(derive(seed, r));
      std::int64_t s = 0;
      unsigned char ok = 1;
      for (std::int64_t k = 0; k < horizon; ++k) {
        s += law.sample(rng);
        if (s == 0) {
          ok = 0;
          break;
        }
      }
      alive[r] = ok;
    }
  });

  std::int64_t count = 0;
  for (unsigned char a : alive) count += a;
  const double p = static_cast<double>(count) / static_cast<double>(reps);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  return QEstimate{p, se, QMethod::Survival, horizon, reps};
}

}  // namespace rwrs
