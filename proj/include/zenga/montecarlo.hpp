// Monte Carlo study of the plug-in Zenga estimator under multinomial sampling.
//
// Replicate b at size index i draws from its own engine, seeded by hashing
// (seed, i, b). Results land in per-replicate slots and are reduced in
// replicate order, so the report does not depend on the number of workers.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "zenga/asymptotics.hpp"
#include "zenga/diagnostics.hpp"
#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"

namespace zenga {

using Engine = std::mt19937_64;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seed for the stream of (size index, replicate index) under a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t size_index, std::uint64_t replicate) noexcept {
  std::uint64_t h = detail::splitmix64(seed);
  h = detail::splitmix64(h ^ size_index);
  return detail::splitmix64(h ^ replicate);
}

inline Engine make_stream(std::uint64_t seed, std::uint64_t size_index, std::uint64_t replicate) {
  return Engine(stream_seed(seed, size_index, replicate));
}

/// Multinomial(n, p) draw by sequential conditional binomials.
inline CountVector sample_counts(const DiscreteDistribution& dist, std::int64_t n, Engine& engine) {
  if (n < 1) throw input_error("sample size must be at least 1");
  const std::size_t m = dist.size();
  std::vector<std::int64_t> counts(m, 0);
  std::int64_t left = n;
  double mass_left = 1.0;
  for (std::size_t j = 0; j + 1 < m && left > 0; ++j) {
    const double q = std::clamp(dist.prob(j) / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> draw(left, q);
    counts[j] = draw(engine);
    left -= counts[j];
    mass_left = dist.tail(j);
  }
  counts[m - 1] += left;
  return CountVector(std::move(counts));
}

/// N_h = (n_h - n p_h) / sqrt(n p_h).
inline std::vector<double> normalized_counts(const CountVector& counts, const DiscreteDistribution& dist) {
  if (counts.size() != dist.size()) throw input_error("counts and distribution have different lengths");
  const double n = static_cast<double>(counts.total());
  std::vector<double> out(dist.size());
  for (std::size_t h = 0; h < dist.size(); ++h)
    out[h] = (static_cast<double>(counts[h]) - n * dist.prob(h)) / std::sqrt(n * dist.prob(h));
  return out;
}

/// sqrt(n) (zhat - Z_d) / sigma with a precomputed sigma > 0.
inline double standardize(double zhat, double z_population, double sigma, std::int64_t n) {
  if (!(sigma > 0.0)) throw input_error("cannot standardize with zero asymptotic variance");
  return std::sqrt(static_cast<double>(n)) * (zhat - z_population) / sigma;
}

inline double standardize(double zhat, const DiscreteDistribution& dist, std::int64_t n) {
  return standardize(zhat, zenga_population(dist).index,
                     std::sqrt(asymptotic_variance(dist, VarianceMode::corrected)), n);
}

struct StudyConfig {
  DiscreteDistribution dist;
  std::vector<std::int64_t> sizes;
  std::int64_t replicates = 3000;
  std::uint64_t seed = 42;
  double level = 0.95;
  /// Worker threads; 0 picks the hardware concurrency. Output does not depend on it.
  unsigned threads = 0;

  void validate() const {
    if (sizes.empty()) throw input_error("at least one sample size is required");
    for (auto n : sizes)
      if (n < 2) throw input_error("sample sizes must be at least 2 (got " + std::to_string(n) + ")");
    if (replicates < 100) throw input_error("at least 100 replicates are required");
    if (!(level > 0.0 && level < 1.0)) throw input_error("confidence level must lie in (0, 1)");
  }
};

struct SizeSummary {
  std::int64_t size = 0;
  double erm = 0.0;             // mean of zhat - Z_d
  double mse = 0.0;
  double rmse = 0.0;
  double sd_scaled = 0.0;       // sample sd of sqrt(n) (zhat - Z_d)
  double sigma_analytic = 0.0;  // sqrt of the corrected asymptotic variance
  double ks_distance = 0.0;
  double coverage = 0.0;
};

struct StudyReport {
  double z_population = 0.0;
  std::vector<SizeSummary> sizes;
  /// Standardized statistics at the largest size.
  std::vector<double> standardized;
  std::vector<QuantilePair> qq;
  std::vector<DensityPoint> kde;
};

struct ReplicateOutcome {
  double zhat = 0.0;
  bool covered = false;
};

/// zhat and CI coverage for replicate `b` of size index `i`.
inline ReplicateOutcome run_replicate(const StudyConfig& cfg, const std::vector<double>& support, double z_pop,
                                      double quantile, std::size_t i, std::int64_t b) {
  Engine engine = make_stream(cfg.seed, i, static_cast<std::uint64_t>(b));
  const std::int64_t n = cfg.sizes[i];
  const CountVector counts = sample_counts(cfg.dist, n, engine);
  ReplicateOutcome out;
  out.zhat = zenga_empirical(counts, support).index;
  const DiscreteDistribution emp = empirical_distribution(counts, support);
  double lo = out.zhat, hi = out.zhat;
  if (emp.size() >= 2) {
    const double half = quantile * std::sqrt(asymptotic_variance(emp, VarianceMode::corrected) / static_cast<double>(n));
    lo = std::clamp(out.zhat - half, 0.0, 1.0);
    hi = std::clamp(out.zhat + half, 0.0, 1.0);
  }
  out.covered = lo <= z_pop && z_pop <= hi;
  return out;
}

inline StudyReport run_study(const StudyConfig& cfg) {
  cfg.validate();
  const auto& support = cfg.dist.values();
  const double z_pop = zenga_population(cfg.dist).index;
  const double sigma = std::sqrt(asymptotic_variance(cfg.dist, VarianceMode::corrected));
  const double quantile = normal_quantile(0.5 * (1.0 + cfg.level));
  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));

  StudyReport report;
  report.z_population = z_pop;
  const std::size_t largest = static_cast<std::size_t>(
      std::max_element(cfg.sizes.begin(), cfg.sizes.end()) - cfg.sizes.begin());

  std::vector<ReplicateOutcome> outcomes(reps);
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t b = begin; b < end; ++b)
        outcomes[b] = run_replicate(cfg, support, z_pop, quantile, i, static_cast<std::int64_t>(b));
    };
    if (workers <= 1) {
      work(0, reps);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work, reps * w / workers, reps * (w + 1) / workers);
    }

    const std::int64_t n = cfg.sizes[i];
    const double root_n = std::sqrt(static_cast<double>(n));
    SizeSummary s;
    s.size = n;
    s.sigma_analytic = sigma;
    std::vector<double> scaled(reps);
    double err_sum = 0.0, sq_sum = 0.0, covered = 0.0;
    for (std::size_t b = 0; b < reps; ++b) {
      const double e = outcomes[b].zhat - z_pop;
      err_sum += e;
      sq_sum += e * e;
      covered += outcomes[b].covered ? 1.0 : 0.0;
      scaled[b] = root_n * e;
    }
    const double B = static_cast<double>(reps);
    s.erm = err_sum / B;
    s.mse = sq_sum / B;
    s.rmse = std::sqrt(s.mse);
    s.sd_scaled = std::sqrt(sample_variance(scaled));
    s.coverage = covered / B;

    std::vector<double> standardized;
    if (sigma > 0.0) {
      standardized.resize(reps);
      for (std::size_t b = 0; b < reps; ++b) standardized[b] = scaled[b] / sigma;
      s.ks_distance = ks_distance_normal(standardized);
    }
    if (i == largest && !standardized.empty()) {
      report.qq = qq_pairs(standardized);
      report.kde = gaussian_kde(standardized);
      report.standardized = std::move(standardized);
    }
    report.sizes.push_back(s);
  }
  return report;
}

}  // namespace zenga
