// Normality diagnostics for a sample of standardized statistics.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zenga/normal.hpp"

namespace zenga {

/// Kolmogorov-Smirnov distance between the empirical cdf of the sample and the
/// standard normal cdf.
inline double ks_distance_normal(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_distance_normal: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

struct QuantilePair {
  double theoretical;
  double empirical;
};

/// (Phi^-1((b - 0.5)/B), b-th order statistic) for b = 1..B.
inline std::vector<QuantilePair> qq_pairs(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  std::vector<QuantilePair> out;
  out.reserve(sample.size());
  for (std::size_t b = 0; b < sample.size(); ++b)
    out.push_back({normal_quantile((static_cast<double>(b) + 0.5) / n), sample[b]});
  return out;
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Unbiased sample variance (n - 1 denominator), two-pass.
inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

/// Silverman's rule of thumb 1.06 sd B^(-1/5).
inline double silverman_bandwidth(const std::vector<double>& sample) {
  return 1.06 * std::sqrt(sample_variance(sample)) * std::pow(static_cast<double>(sample.size()), -0.2);
}

struct DensityPoint {
  double abscissa;
  double density;
};

/// Gaussian-kernel density estimate on an evenly spaced grid spanning the
/// sample plus three bandwidths either side.
inline std::vector<DensityPoint> gaussian_kde(const std::vector<double>& sample, std::size_t grid_points = 256) {
  if (sample.size() < 2 || grid_points < 2) return {};
  const double bw = silverman_bandwidth(sample);
  if (!(bw > 0.0)) return {};
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it - 3.0 * bw;
  const double hi = *hi_it + 3.0 * bw;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  const double scale = 1.0 / (static_cast<double>(sample.size()) * bw);
  std::vector<DensityPoint> out;
  out.reserve(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double t = lo + step * static_cast<double>(i);
    double s = 0.0;
    for (double x : sample) s += normal_pdf((t - x) / bw);
    out.push_back({t, s * scale});
  }
  return out;
}

}  // namespace zenga
