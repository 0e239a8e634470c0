#include "rwrs/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwrs/parallel.hpp"
#include "rwrs/stats.hpp"

namespace rwrs {

BlockDecomposition::BlockDecomposition(std::vector<std::int64_t> sorted_sites,
                                       const MixingSchedule& schedule)
    : sites_(std::move(sorted_sites)),
      r_n_(schedule.r_n),
      l_n_(schedule.l_n),
      k_n_(schedule.k_n) {
  if (sites_.empty()) throw std::domain_error("decompose requires at least one visited site");
  for (std::size_t i = 1; i < sites_.size(); ++i)
    if (sites_[i] <= sites_[i - 1])
      throw std::domain_error("decompose requires strictly ascending distinct sites");
  K_n_ = static_cast<std::int64_t>(sites_.size()) / r_n_ + 1;
}

std::span<const std::int64_t> BlockDecomposition::block(std::int64_t j) const {
  const auto R = static_cast<std::int64_t>(sites_.size());
  const std::int64_t begin = j * r_n_;
  const std::int64_t end = std::min((j + 1) * r_n_, R);
  if (j < 0 || j >= K_n_) throw std::out_of_range("block index");
  if (begin >= end) return {};
  return {sites_.data() + begin, static_cast<std::size_t>(end - begin)};
}

std::span<const std::int64_t> BlockDecomposition::stripe(std::int64_t j) const {
  const auto b = block(j);
  const auto len = static_cast<std::int64_t>(b.size());
  if (j == K_n_ - 1 && len < l_n_) return {};  // convention: last stripe empty
  const std::int64_t sl = std::min(l_n_, len);
  return b.subspan(static_cast<std::size_t>(len - sl));
}

std::span<const std::int64_t> BlockDecomposition::trimmed(std::int64_t j) const {
  const auto b = block(j);
  return b.first(b.size() - stripe(j).size());
}

BlockDecomposition decompose(const WalkStats& stats, const MixingSchedule& schedule) {
  if (stats.range < 1) throw std::domain_error("decompose requires R_n >= 1");
  if (schedule.n != stats.n) throw std::domain_error("decompose: schedule built for another n");
  return BlockDecomposition(stats.visited_sites, schedule);
}

namespace {

// Per-replication exceedance bookkeeping over common scenery redraws:
// which blocks have their full / trimmed maximum above u_n.
struct BlockMcCounts {
  std::vector<std::vector<std::int32_t>> rep_full;     // block indices, sparse
  std::vector<std::vector<std::int32_t>> rep_trimmed;  // subset of rep_full
  std::vector<std::int64_t> exceed_full;               // per-block totals
  std::vector<std::int64_t> exceed_trimmed;
  std::int64_t reps = 0;
};

BlockMcCounts run_block_mc(const SceneryModel& model, const BlockDecomposition& decomp,
                           double u_n, std::int64_t reps, RngKey seed, unsigned threads) {
  BlockMcCounts counts;
  counts.reps = reps;
  counts.rep_full.resize(static_cast<std::size_t>(reps));
  counts.rep_trimmed.resize(static_cast<std::size_t>(reps));
  const std::int64_t K = decomp.K_n();

  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const SceneryModel redraw = model.with_seed(derive(seed, r));
      for (std::int64_t j = 0; j < K; ++j) {
        const auto trimmed = decomp.trimmed(j);
        const auto stripe = decomp.stripe(j);
        bool trimmed_hit = false;
        for (std::int64_t site : trimmed) {
          if (redraw.value(site) > u_n) {
            trimmed_hit = true;
            break;
          }
        }
        bool full_hit = trimmed_hit;
        if (!full_hit) {
          for (std::int64_t site : stripe) {
            if (redraw.value(site) > u_n) {
              full_hit = true;
              break;
            }
          }
        }
        if (full_hit) counts.rep_full[r].push_back(static_cast<std::int32_t>(j));
        if (trimmed_hit) counts.rep_trimmed[r].push_back(static_cast<std::int32_t>(j));
      }
    }
  });

  counts.exceed_full.assign(static_cast<std::size_t>(K), 0);
  counts.exceed_trimmed.assign(static_cast<std::size_t>(K), 0);
  for (const auto& list : counts.rep_full)
    for (auto j : list) ++counts.exceed_full[static_cast<std::size_t>(j)];
  for (const auto& list : counts.rep_trimmed)
    for (auto j : list) ++counts.exceed_trimmed[static_cast<std::size_t>(j)];
  return counts;
}

double product_of_block_probs(const std::vector<std::int64_t>& exceed, std::int64_t reps) {
  double prod = 1.0;
  for (auto e : exceed)
    prod *= 1.0 - static_cast<double>(e) / static_cast<double>(reps);
  return prod;
}

// log(R-1-E_j) guarded against empty leave-one-out cells
double safe_log(double x) { return x > 0.0 ? std::log(x) : -745.0; }

struct JackknifeDiffs {
  double se_i = 0.0, se_ii = 0.0, se_iii = 0.0;
};

// Leave-one-replication-out standard errors of the three lemma gaps. The
// products recompute in O(#exceeding blocks) per replication.
JackknifeDiffs jackknife_ses(const BlockMcCounts& c) {
  const std::int64_t R = c.reps;
  const double Rm1 = static_cast<double>(R - 1);
  const std::size_t K = c.exceed_full.size();

  double base_full = 0.0, base_trim = 0.0;
  std::vector<double> delta_full(K), delta_trim(K);
  for (std::size_t j = 0; j < K; ++j) {
    const double ef = static_cast<double>(c.exceed_full[j]);
    const double et = static_cast<double>(c.exceed_trimmed[j]);
    base_full += safe_log(Rm1 - ef);
    base_trim += safe_log(Rm1 - et);
    delta_full[j] = safe_log(static_cast<double>(R) - ef) - safe_log(Rm1 - ef);
    delta_trim[j] = safe_log(static_cast<double>(R) - et) - safe_log(Rm1 - et);
  }
  const double log_norm = static_cast<double>(K) * std::log(Rm1);

  std::int64_t c_full_joint = 0, c_trim_joint = 0;
  for (std::int64_t r = 0; r < R; ++r) {
    c_full_joint += c.rep_full[static_cast<std::size_t>(r)].empty() ? 1 : 0;
    c_trim_joint += c.rep_trimmed[static_cast<std::size_t>(r)].empty() ? 1 : 0;
  }

  std::vector<double> v_i(static_cast<std::size_t>(R));
  std::vector<double> v_ii(static_cast<std::size_t>(R));
  std::vector<double> v_iii(static_cast<std::size_t>(R));
  for (std::int64_t r = 0; r < R; ++r) {
    const auto& lf = c.rep_full[static_cast<std::size_t>(r)];
    const auto& lt = c.rep_trimmed[static_cast<std::size_t>(r)];
    const double pf = (static_cast<double>(c_full_joint) - (lf.empty() ? 1.0 : 0.0)) / Rm1;
    const double pt = (static_cast<double>(c_trim_joint) - (lt.empty() ? 1.0 : 0.0)) / Rm1;
    double lsum_full = base_full;
    for (auto j : lf) lsum_full += delta_full[static_cast<std::size_t>(j)];
    double lsum_trim = base_trim;
    for (auto j : lt) lsum_trim += delta_trim[static_cast<std::size_t>(j)];
    const double prod_f = std::exp(lsum_full - log_norm);
    const double prod_t = std::exp(lsum_trim - log_norm);
    v_i[static_cast<std::size_t>(r)] = std::fabs(pt - pf);
    v_ii[static_cast<std::size_t>(r)] = std::fabs(pt - prod_t);
    v_iii[static_cast<std::size_t>(r)] = std::fabs(prod_t - prod_f);
  }

  auto jk_se = [&](const std::vector<double>& vals) {
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(R);
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    return std::sqrt(Rm1 / static_cast<double>(R) * ss);
  };
  return JackknifeDiffs{jk_se(v_i), jk_se(v_ii), jk_se(v_iii)};
}

}  // namespace

Lemma1Result lemma1_diagnostic(const SceneryModel& model, const WalkStats& stats,
                               const MixingSchedule& schedule, double tau,
                               std::int64_t reps, RngKey seed, unsigned threads) {
  if (reps < 500) throw std::domain_error("lemma1_diagnostic requires reps >= 500");
  const BlockDecomposition decomp = decompose(stats, schedule);
  const double u_n = model.threshold(stats.n, tau).u_n;
  const BlockMcCounts counts = run_block_mc(model, decomp, u_n, reps, seed, threads);

  const double R = static_cast<double>(reps);
  std::int64_t c_full_joint = 0, c_trim_joint = 0;
  for (const auto& l : counts.rep_full) c_full_joint += l.empty() ? 1 : 0;
  for (const auto& l : counts.rep_trimmed) c_trim_joint += l.empty() ? 1 : 0;

  Lemma1Result out;
  out.u_n = u_n;
  out.reps = reps;
  out.p_full = static_cast<double>(c_full_joint) / R;
  out.p_trimmed = static_cast<double>(c_trim_joint) / R;
  out.prod_full = product_of_block_probs(counts.exceed_full, reps);
  out.prod_trimmed = product_of_block_probs(counts.exceed_trimmed, reps);
  out.d_i = std::fabs(out.p_full - out.p_trimmed);
  out.d_ii = std::fabs(out.p_trimmed - out.prod_trimmed);
  out.d_iii = std::fabs(out.prod_trimmed - out.prod_full);

  const JackknifeDiffs jk = jackknife_ses(counts);
  out.se_i = jk.se_i;
  out.se_ii = jk.se_ii;
  out.se_iii = jk.se_iii;
  return out;
}

Lemma2Result lemma2_diagnostic(const SceneryModel& model, const WalkStats& stats,
                               const MixingSchedule& schedule, double tau,
                               std::int64_t reps, RngKey seed, const QEstimate& q_hat,
                               unsigned threads) {
  if (reps < 500) throw std::domain_error("lemma2_diagnostic requires reps >= 500");
  const BlockDecomposition decomp = decompose(stats, schedule);
  const double u_n = model.threshold(stats.n, tau).u_n;
  const BlockMcCounts counts = run_block_mc(model, decomp, u_n, reps, seed, threads);

  Lemma2Result out;
  out.u_n = u_n;
  out.reps = reps;
  out.product = product_of_block_probs(counts.exceed_full, reps);

  // delta method, treating per-block estimates as independent
  const double R = static_cast<double>(reps);
  double rel_var = 0.0;
  for (auto e : counts.exceed_full) {
    const double p = 1.0 - static_cast<double>(e) / R;
    if (p <= 0.0) {
      rel_var = std::numeric_limits<double>::infinity();
      break;
    }
    rel_var += (1.0 - p) / (p * R);
  }
  out.product_se = std::isfinite(rel_var) ? out.product * std::sqrt(rel_var) : 0.0;

  out.target = std::exp(-tau * q_hat.value);
  out.target_se = tau * out.target * q_hat.std_error;
  out.deviation = out.product - out.target;
  out.combined_se = std::sqrt(out.product_se * out.product_se + out.target_se * out.target_se);
  return out;
}

}  // namespace rwrs
