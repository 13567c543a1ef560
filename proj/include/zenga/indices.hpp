// Discrete Zenga index (population and empirical forms) and the Gini index.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "zenga/distribution.hpp"

namespace zenga {

/// One summand of the discrete Zenga index, for the cut after support point j.
struct ZengaTerm {
  std::size_t j;
  double weight;      // p_j (or f_j)
  double lower_mean;  // mean income of points 0..j
  double upper_mean;  // mean income of points j+1..m-1
  double ratio;       // lower_mean / upper_mean, in [0, 1]

  /// Pointwise Zenga curve value at this cut.
  double curve() const noexcept { return 1.0 - ratio; }
};

struct ZengaDecomposition {
  std::vector<ZengaTerm> terms;
  double total = 1.0;
};

struct ZengaResult {
  double index;
  ZengaDecomposition decomposition;
};

/// Z_d = 1 - sum_{j<m-1} p_j * (mu_(j)/p*_j) / (mu^(j)/(1-p*_j)).
inline ZengaResult zenga_population(const DiscreteDistribution& dist) {
  ZengaDecomposition dec;
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < dist.size(); ++j) {
    const double lower = dist.lower_sum(j) / dist.cumulative(j);
    const double upper = dist.upper_sum(j) / dist.tail(j);
    const double ratio = lower / upper;
    acc += dist.prob(j) * ratio;
    dec.terms.push_back({j, dist.prob(j), lower, upper, ratio});
  }
  dec.total = 1.0 - acc;
  return {dec.total, std::move(dec)};
}

/// Plug-in index on observed counts. Empty cells contribute nothing, and cuts
/// above the largest observed point are skipped, so this is the population
/// index of the observed support.
inline ZengaResult zenga_empirical(const CountVector& counts, const std::vector<double>& support) {
  check_aligned(counts, support);
  for (std::size_t j = 1; j < support.size(); ++j)
    if (!(support[j] > support[j - 1])) throw input_error("support must be strictly increasing");

  const std::int64_t n = counts.total();
  const std::size_t m = support.size();

  // Suffix sums of n_h x_h, kept separate from prefix sums to avoid cancellation.
  std::vector<double> upper_sum(m + 1, 0.0);
  for (std::size_t h = m; h-- > 0;) upper_sum[h] = upper_sum[h + 1] + static_cast<double>(counts[h]) * support[h];

  ZengaDecomposition dec;
  double acc = 0.0, lower_sum = 0.0;
  std::int64_t below = 0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    below += counts[j];
    lower_sum += static_cast<double>(counts[j]) * support[j];
    if (counts[j] == 0 || below == n) continue;
    const double lower = lower_sum / static_cast<double>(below);
    const double upper = upper_sum[j + 1] / static_cast<double>(n - below);
    const double ratio = lower / upper;
    const double weight = static_cast<double>(counts[j]) / static_cast<double>(n);
    acc += weight * ratio;
    dec.terms.push_back({j, weight, lower, upper, ratio});
  }
  dec.total = 1.0 - acc;
  return {dec.total, std::move(dec)};
}

/// Mean absolute pairwise difference over twice the mean.
inline double gini_population(const DiscreteDistribution& dist) {
  const double mean = dist.mean();
  if (!(mean > 0.0)) throw input_error("Gini index undefined for zero mean");
  const auto& x = dist.values();
  const auto& p = dist.probs();
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < x.size(); ++k) s += p[j] * p[k] * std::abs(x[j] - x[k]);
  return s / (2.0 * mean);
}

inline double gini_empirical(const CountVector& counts, const std::vector<double>& support) {
  return gini_population(empirical_distribution(counts, support));
}

}  // namespace zenga
