// Asymptotic normality of the plug-in Zenga estimator.
//
// sqrt(n) (Z_{d,n} - Z_d) is asymptotically H^t N where N_h = (n_h - n p_h)/sqrt(n p_h)
// are the normalized multinomial counts with covariance Sigma. The variance is
// H^t Sigma H. Two variants of H are provided:
//
//   literal    -H = C + sum_j (g1_j D1_j + g2_j D2_j + (p*_j)^-2 E_j)
//   corrected  -H = C + sum_j (g1_j D1_j + g2_j D2_j + zeta_j E_j),
//              zeta_j = p_j mu_(j) / ((p*_j)^2 mu^(j))
//
// Only the corrected vector is the gradient of the index in normalized-count
// coordinates; it agrees with the delta-method and influence-function variances.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"
#include "zenga/influence.hpp"
#include "zenga/normal.hpp"

namespace zenga {

/// Dense row-major square matrix.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n = 0) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<double> operator*(const std::vector<double>& v) const {
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += a_[i * n_ + j] * v[j];
    return out;
  }

  /// v^t A v, accumulated in index order.
  double quadratic_form(const std::vector<double>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row += a_[i * n_ + j] * v[j];
      s += v[i] * row;
    }
    return s;
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Covariance of the normalized counts: 1 - p_h on the diagonal, -sqrt(p_h p_k) off it.
inline SquareMatrix sigma_matrix(const DiscreteDistribution& dist) {
  const std::size_t m = dist.size();
  SquareMatrix s(m);
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t k = 0; k < m; ++k)
      s(h, k) = h == k ? 1.0 - dist.prob(h) : -std::sqrt(dist.prob(h) * dist.prob(k));
  return s;
}

/// Score vectors and coefficients for one cut j.
struct CutScores {
  std::vector<double> d1;  // x_h sqrt(p_h) for h <= j
  std::vector<double> d2;  // -x_h sqrt(p_h) for h > j
  std::vector<double> e;   // -sqrt(p_h) for h <= j
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double zeta = 0.0;       // corrected E coefficient
  double kappa_literal = 0.0;  // (p*_j)^-2
};

struct ScoreSet {
  std::vector<double> c;
  std::vector<CutScores> cuts;
  std::vector<double> h_literal;
  std::vector<double> h_corrected;
};

enum class VarianceMode { literal, corrected };

inline ScoreSet score_set(const DiscreteDistribution& dist) {
  const std::size_t m = dist.size();
  if (m < 2) throw input_error("score vectors need at least two support points");

  ScoreSet out;
  std::vector<double> root(m);
  for (std::size_t h = 0; h < m; ++h) root[h] = std::sqrt(dist.prob(h));

  out.c.assign(m, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j)
    out.c[j] = root[j] * (dist.lower_sum(j) / dist.cumulative(j)) / (dist.upper_sum(j) / dist.tail(j));

  out.cuts.reserve(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    CutScores cut;
    cut.d1.assign(m, 0.0);
    cut.d2.assign(m, 0.0);
    cut.e.assign(m, 0.0);
    for (std::size_t h = 0; h < m; ++h) {
      if (h <= j) {
        cut.d1[h] = dist.value(h) * root[h];
        cut.e[h] = -root[h];
      } else {
        cut.d2[h] = -dist.value(h) * root[h];
      }
    }
    const double p = dist.prob(j);
    const double cum = dist.cumulative(j);
    const double odds = dist.tail(j) / cum;  // (1/p*) / (1/(1-p*))
    const double lower = dist.lower_sum(j);
    const double upper = dist.upper_sum(j);
    cut.gamma1 = p * odds / upper;
    cut.gamma2 = p * odds * lower / (upper * upper);
    cut.zeta = p * lower / (cum * cum * upper);
    cut.kappa_literal = 1.0 / (cum * cum);
    out.cuts.push_back(std::move(cut));
  }

  auto assemble = [&](VarianceMode mode) {
    std::vector<double> minus_h(out.c);
    for (const auto& cut : out.cuts) {
      const double kappa = mode == VarianceMode::literal ? cut.kappa_literal : cut.zeta;
      for (std::size_t h = 0; h < m; ++h)
        minus_h[h] += cut.gamma1 * cut.d1[h] + cut.gamma2 * cut.d2[h] + kappa * cut.e[h];
    }
    for (auto& v : minus_h) v = -v;
    return minus_h;
  };
  out.h_literal = assemble(VarianceMode::literal);
  out.h_corrected = assemble(VarianceMode::corrected);
  return out;
}

/// H^t Sigma H. Zero for a single-atom law.
/// Sigma = I - sqrt(p) sqrt(p)^t, so this is |H - (sqrt(p).H) sqrt(p)|^2; summing
/// squares of the projected vector avoids cancellation when H is nearly along sqrt(p).
inline double asymptotic_variance(const DiscreteDistribution& dist, VarianceMode mode = VarianceMode::corrected) {
  if (dist.size() < 2) return 0.0;
  const ScoreSet scores = score_set(dist);
  const auto& h = mode == VarianceMode::literal ? scores.h_literal : scores.h_corrected;
  double along = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) along += std::sqrt(dist.prob(k)) * h[k];
  double var = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double r = h[k] - along * std::sqrt(dist.prob(k));
    var += r * r;
  }
  return var;
}

namespace detail {

/// The index as a function of unconstrained masses: cumulative mass is the
/// prefix sum and 1 - p*_j is replaced by the suffix sum.
inline double zenga_free_masses(const std::vector<double>& x, const std::vector<double>& p) {
  const std::size_t m = x.size();
  std::vector<double> tail(m, 0.0), upper(m, 0.0);
  for (std::size_t j = m - 1; j-- > 0;) {
    tail[j] = tail[j + 1] + p[j + 1];
    upper[j] = upper[j + 1] + p[j + 1] * x[j + 1];
  }
  double acc = 0.0, cum = 0.0, lower = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    cum += p[j];
    lower += p[j] * x[j];
    acc += p[j] * (lower / cum) / (upper[j] / tail[j]);
  }
  return 1.0 - acc;
}

}  // namespace detail

inline constexpr double kDeltaRelativeStep = 1e-6;

/// Delta-method variance g^t (diag(p) - p p^t) g with g the central-difference
/// gradient of the index in the masses.
inline double delta_variance(const DiscreteDistribution& dist, double step = kDeltaRelativeStep) {
  const std::size_t m = dist.size();
  if (m < 2) return 0.0;
  const auto& x = dist.values();
  std::vector<double> p(dist.probs());
  std::vector<double> g(m);
  for (std::size_t h = 0; h < m; ++h) {
    const double dh = step * std::max(p[h], 1e-3);
    if (!(p[h] - dh > 0.0))
      throw input_error("finite-difference step too large for mass " + std::to_string(h + 1));
    const double saved = p[h];
    p[h] = saved + dh;
    const double up = detail::zenga_free_masses(x, p);
    p[h] = saved - dh;
    const double down = detail::zenga_free_masses(x, p);
    p[h] = saved;
    g[h] = (up - down) / (2.0 * dh);
  }
  // sum p g^2 - (sum p g)^2, written as a centered sum for stability
  double mean = 0.0;
  for (std::size_t h = 0; h < m; ++h) mean += p[h] * g[h];
  double var = 0.0;
  for (std::size_t h = 0; h < m; ++h) var += p[h] * (g[h] - mean) * (g[h] - mean);
  return var;
}

/// Every variance path for one law.
struct VarianceSet {
  double literal = 0.0;
  double corrected = 0.0;
  double delta = 0.0;
  double influence = 0.0;
};

inline VarianceSet variance_set(const DiscreteDistribution& dist) {
  if (dist.size() < 2) return {};
  return {asymptotic_variance(dist, VarianceMode::literal), asymptotic_variance(dist, VarianceMode::corrected),
          delta_variance(dist), influence_profile(dist).if_variance};
}

struct AsymptoticReport {
  double estimate = 0.0;
  std::int64_t n = 0;
  double sigma2_literal = 0.0;
  double sigma2_corrected = 0.0;
  double sigma2_delta = 0.0;
  double sigma2_if = 0.0;
  double std_error = 0.0;  // sqrt(sigma2_corrected / n)
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.95;
  /// Fewer than two distinct observed points: the interval collapses to the estimate.
  bool degenerate = false;
};

/// Plug-in interval Z +/- q sqrt(sigma^2 / n), sigma^2 the corrected variance at
/// the empirical law, clamped to [0, 1].
inline AsymptoticReport confidence_interval(const CountVector& counts, const std::vector<double>& support,
                                            double level) {
  if (!(level > 0.0 && level < 1.0)) throw input_error("confidence level must lie in (0, 1)");
  const DiscreteDistribution emp = empirical_distribution(counts, support);
  AsymptoticReport r;
  r.level = level;
  r.n = counts.total();
  r.estimate = zenga_empirical(counts, support).index;
  if (emp.size() < 2) {
    r.degenerate = true;
    r.ci_low = r.ci_high = r.estimate;
    return r;
  }
  const VarianceSet v = variance_set(emp);
  r.sigma2_literal = v.literal;
  r.sigma2_corrected = v.corrected;
  r.sigma2_delta = v.delta;
  r.sigma2_if = v.influence;
  r.std_error = std::sqrt(v.corrected / static_cast<double>(r.n));
  const double half = normal_quantile(0.5 * (1.0 + level)) * r.std_error;
  r.ci_low = std::clamp(r.estimate - half, 0.0, 1.0);
  r.ci_high = std::clamp(r.estimate + half, 0.0, 1.0);
  return r;
}

}  // namespace zenga
