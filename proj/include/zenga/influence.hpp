// Influence function of the discrete Zenga index.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"

namespace zenga {

/// Analytic influence function at support point k.
///
/// With s running over the cut points x_0..x_{m-2} (the largest point is never a
/// cut, so neither F(s) nor 1 - F(s) vanishes), R1(s) = E[X | X <= s] and
/// R2(s) = E[X | X > s], the value is
///
///   sum_s p(s) [ R1/(R2^2 (1-F)) x 1{x>s} - x 1{x<=s}/(R2 F) ]
/// + sum_s p(s) [ R1/(R2 F) 1{x<=s} - R1/(R2 (1-F)) 1{x>s} ]
/// - R1(x)/R2(x) 1{x is a cut point}
/// + sum_s p(s) R1(s)/R2(s).
///
/// The single-atom law has IF identically zero.
inline double influence_function(const DiscreteDistribution& dist, std::size_t k) {
  const std::size_t m = dist.size();
  if (k >= m) throw std::out_of_range("support index " + std::to_string(k) + " out of range");
  if (m == 1) return 0.0;
  const double x = dist.value(k);

  double first = 0.0, second = 0.0, constant = 0.0, dirac = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double p = dist.prob(j);
    const double F = dist.cumulative(j);
    const double G = dist.tail(j);  // 1 - F
    const double r1 = dist.lower_sum(j) / F;
    const double r2 = dist.upper_sum(j) / G;
    const bool below = k <= j;
    if (below) {
      first -= p * x / (r2 * F);
      second += p * r1 / (r2 * F);
    } else {
      first += p * r1 / (r2 * r2 * G) * x;
      second -= p * r1 / (r2 * G);
    }
    constant += p * r1 / r2;
    if (j == k) dirac = r1 / r2;
  }
  return first + second - dirac + constant;
}

inline constexpr double kMaxContamination = 1e-3;

/// (Z(contaminated) - Z) / eps for the mixture (1 - eps) P + eps delta_{x_k}.
inline double numeric_influence(const DiscreteDistribution& dist, std::size_t k, double eps) {
  if (!(eps > 0.0 && eps <= kMaxContamination))
    throw input_error("contamination mass must lie in (0, 1e-3]");
  if (k >= dist.size()) throw std::out_of_range("support index " + std::to_string(k) + " out of range");
  std::vector<double> probs(dist.probs());
  for (auto& p : probs) p *= 1.0 - eps;
  probs[k] += eps;
  const DiscreteDistribution contaminated(dist.values(), std::move(probs));
  return (zenga_population(contaminated).index - zenga_population(dist).index) / eps;
}

/// Contamination quotient at an arbitrary income x >= 0. If x is not a support
/// point it is inserted with mass eps.
inline double numeric_influence_at(const DiscreteDistribution& dist, double x, double eps) {
  if (!(eps > 0.0 && eps <= kMaxContamination))
    throw input_error("contamination mass must lie in (0, 1e-3]");
  if (!(x >= 0.0) || !std::isfinite(x)) throw input_error("contamination point must be finite and non-negative");
  std::vector<double> values(dist.values()), probs(dist.probs());
  for (auto& p : probs) p *= 1.0 - eps;
  auto it = std::lower_bound(values.begin(), values.end(), x);
  const auto pos = it - values.begin();
  if (it != values.end() && *it == x) {
    probs[static_cast<std::size_t>(pos)] += eps;
  } else {
    values.insert(it, x);
    probs.insert(probs.begin() + pos, eps);
  }
  const DiscreteDistribution contaminated(std::move(values), std::move(probs));
  return (zenga_population(contaminated).index - zenga_population(dist).index) / eps;
}

struct InfluencePoint {
  double x;
  double if_value;
};

struct InfluenceProfile {
  std::vector<InfluencePoint> points;
  double if_variance = 0.0;

  /// sum_k p_k IF(x_k); zero up to rounding.
  double weighted_mean(const DiscreteDistribution& dist) const {
    double s = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) s += dist.prob(k) * points[k].if_value;
    return s;
  }
};

inline InfluenceProfile influence_profile(const DiscreteDistribution& dist) {
  InfluenceProfile out;
  out.points.reserve(dist.size());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double v = influence_function(dist, k);
    out.points.push_back({dist.value(k), v});
    out.if_variance += dist.prob(k) * v * v;
  }
  return out;
}

}  // namespace zenga
