// Finite discrete income laws, observed counts and grouped (frequency-table) data.
//
// Indices are 0-based throughout. A "cut" j splits the support into the lower
// group {0..j} and the upper group {j+1..m-1}; valid cuts are 0..m-2.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zenga {

/// Raised for malformed or invariant-violating input (bad files, bad flags,
/// invalid distributions). The CLI maps it to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kProbabilitySumTolerance = 1e-12;

enum class SupportOrder {
  strictly_increasing,
  /// Ties allowed. Only meant for exercising degenerate identities in tests.
  non_decreasing,
};

class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> values, std::vector<double> probs,
                       SupportOrder order = SupportOrder::strictly_increasing)
      : values_(std::move(values)), probs_(std::move(probs)) {
    validate(order);
    build_sums();
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  double value(std::size_t j) const { return values_.at(j); }
  double prob(std::size_t j) const { return probs_.at(j); }

  /// p*_j, mass of points 0..j.
  double cumulative(std::size_t j) const { return cum_.at(j); }
  /// Mass strictly above point j (accumulated from the top, not 1 - p*_j).
  double tail(std::size_t j) const { return tail_.at(j); }
  /// Sum of p_h x_h over h <= j.
  double lower_sum(std::size_t j) const { return lower_.at(j); }
  /// Sum of p_h x_h over h > j.
  double upper_sum(std::size_t j) const { return upper_.at(j); }

  double mean() const noexcept { return lower_.back(); }

  /// Right-continuous step cdf.
  double cdf(double s) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), s);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
  }

  DiscreteDistribution scaled(double c) const {
    if (!(c > 0.0)) throw input_error("scale factor must be positive");
    std::vector<double> v(values_);
    for (auto& x : v) x *= c;
    return DiscreteDistribution(std::move(v), probs_, order_);
  }

 private:
  void validate(SupportOrder order) {
    order_ = order;
    if (values_.empty()) throw input_error("distribution needs at least one support point");
    if (values_.size() != probs_.size())
      throw input_error("values and probs have different lengths (" + std::to_string(values_.size()) +
                        " vs " + std::to_string(probs_.size()) + ")");
    for (std::size_t j = 0; j < values_.size(); ++j) {
      if (!std::isfinite(values_[j]) || values_[j] < 0.0)
        throw input_error("value " + std::to_string(j + 1) + " must be finite and non-negative");
      if (j > 0) {
        bool ok = order == SupportOrder::strictly_increasing ? values_[j] > values_[j - 1]
                                                             : values_[j] >= values_[j - 1];
        if (!ok) throw input_error("values must be strictly increasing (at index " + std::to_string(j + 1) + ")");
      }
      if (!std::isfinite(probs_[j]) || !(probs_[j] > 0.0))
        throw input_error("prob " + std::to_string(j + 1) + " must be positive");
    }
    if (!(values_.back() > 0.0)) throw input_error("largest value must be positive");
    double sum = 0.0;
    for (double p : probs_) sum += p;
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance)
      throw input_error("probs sum to " + std::to_string(sum) + ", expected 1");
    if (sum != 1.0)
      for (auto& p : probs_) p /= sum;
  }

  void build_sums() {
    const std::size_t m = values_.size();
    cum_.resize(m);
    lower_.resize(m);
    tail_.resize(m);
    upper_.resize(m);
    double c = 0.0, l = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      c += probs_[j];
      l += probs_[j] * values_[j];
      cum_[j] = c;
      lower_[j] = l;
    }
    double t = 0.0, u = 0.0;
    for (std::size_t j = m; j-- > 0;) {
      tail_[j] = t;
      upper_[j] = u;
      t += probs_[j];
      u += probs_[j] * values_[j];
    }
  }

  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> cum_, tail_, lower_, upper_;
  SupportOrder order_ = SupportOrder::strictly_increasing;
};

/// Per-support-point sample counts.
class CountVector {
 public:
  explicit CountVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw input_error("count vector is empty");
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      if (counts_[j] < 0) throw input_error("count " + std::to_string(j + 1) + " is negative");
      total_ += counts_[j];
    }
    if (total_ < 1) throw input_error("all counts are zero");
  }

  std::size_t size() const noexcept { return counts_.size(); }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  std::int64_t operator[](std::size_t j) const { return counts_.at(j); }
  std::int64_t total() const noexcept { return total_; }

  double frequency(std::size_t j) const { return static_cast<double>(counts_.at(j)) / static_cast<double>(total_); }

  std::int64_t cumulative_count(std::size_t j) const {
    std::int64_t s = 0;
    for (std::size_t h = 0; h <= j; ++h) s += counts_.at(h);
    return s;
  }

  double cumulative_frequency(std::size_t j) const {
    return static_cast<double>(cumulative_count(j)) / static_cast<double>(total_);
  }

  /// Empirical cdf F_n on the given support.
  double ecdf(const std::vector<double>& support, double s) const {
    std::int64_t below = 0;
    for (std::size_t h = 0; h < counts_.size() && h < support.size(); ++h)
      if (support[h] <= s) below += counts_[h];
    return static_cast<double>(below) / static_cast<double>(total_);
  }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// One class (lower, upper] of a frequency table.
struct ClassRow {
  double lower = 0.0;
  double upper = 0.0;
  std::int64_t count = 0;
  std::optional<double> representative;
};

struct FrequencyTable {
  std::vector<ClassRow> rows;

  bool has_representatives() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const ClassRow& r) {
      return r.representative.has_value();
    });
  }

  void validate() const {
    if (rows.empty()) throw input_error("frequency table has no rows");
    bool any = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      const std::string where = "row " + std::to_string(i + 1);
      if (!(r.lower < r.upper)) throw input_error(where + ": class_lower must be below class_upper");
      if (r.count < 0) throw input_error(where + ": negative count");
      if (i > 0 && r.lower < rows[i - 1].upper)
        throw input_error(where + ": class overlaps the previous class");
      any = any || r.count > 0;
    }
    if (!any) throw input_error("all class counts are zero");
  }
};

enum class RepresentativeRule { midpoint, custom };

/// Support points and counts reconstructed from grouped data.
struct GroupedSample {
  std::vector<double> support;
  CountVector counts;
};

inline GroupedSample from_frequency_table(const FrequencyTable& table, RepresentativeRule rule) {
  table.validate();
  std::vector<double> support;
  std::vector<std::int64_t> counts;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    double x = 0.0;
    if (rule == RepresentativeRule::midpoint) {
      x = 0.5 * (r.lower + r.upper);
    } else {
      if (!r.representative)
        throw input_error("row " + std::to_string(i + 1) + ": custom rule needs a representative value");
      x = *r.representative;
    }
    if (r.count == 0) continue;
    if (!support.empty() && !(x > support.back()))
      throw input_error("row " + std::to_string(i + 1) + ": representative points are not increasing");
    support.push_back(x);
    counts.push_back(r.count);
  }
  return {std::move(support), CountVector(std::move(counts))};
}

inline void check_aligned(const CountVector& counts, const std::vector<double>& support) {
  if (counts.size() != support.size())
    throw input_error("counts (" + std::to_string(counts.size()) + ") and support (" +
                      std::to_string(support.size()) + ") have different lengths");
}

/// Empirical law f_j = n_j / n, restricted to cells with n_j > 0.
inline DiscreteDistribution empirical_distribution(const CountVector& counts, const std::vector<double>& support) {
  check_aligned(counts, support);
  std::vector<double> values, probs;
  const auto n = static_cast<double>(counts.total());
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (counts[j] == 0) continue;
    values.push_back(support[j]);
    probs.push_back(static_cast<double>(counts[j]) / n);
  }
  return DiscreteDistribution(std::move(values), std::move(probs));
}

struct PartialMeans {
  double lower;  // sum_{h<=j} p_h x_h
  double upper;  // sum_{h>j} p_h x_h
};

inline PartialMeans partial_means(const DiscreteDistribution& dist, std::size_t j) {
  if (dist.size() < 2 || j > dist.size() - 2)
    throw std::out_of_range("cut index " + std::to_string(j) + " outside 0.." +
                            std::to_string(static_cast<long>(dist.size()) - 2));
  return {dist.lower_sum(j), dist.upper_sum(j)};
}

struct TruncatedMeans {
  double r1;  // E[X | X <= s]
  double r2;  // E[X | X > s]
};

/// Conditional means below-or-at and strictly above threshold s, for x_1 <= s < x_m.
inline TruncatedMeans truncated_means(const DiscreteDistribution& dist, double s) {
  const auto& x = dist.values();
  if (s < x.front()) throw std::out_of_range("threshold below the smallest support point");
  if (s >= x.back()) throw std::out_of_range("threshold at or above the largest support point");
  auto j = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), s) - x.begin()) - 1;
  return {dist.lower_sum(j) / dist.cumulative(j), dist.upper_sum(j) / dist.tail(j)};
}

}  // namespace zenga
