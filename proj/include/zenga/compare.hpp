// Ranking several grouped datasets by Zenga and Gini inequality.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"

namespace zenga {

/// Competition ranks, 1 = smallest value; equal values share a rank.
inline std::vector<std::size_t> ascending_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> ranks(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] < v[i]) ++ranks[i];
  return ranks;
}

inline bool has_ties(const std::vector<std::size_t>& ranks) {
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (std::size_t k = i + 1; k < ranks.size(); ++k)
      if (ranks[i] == ranks[k]) return true;
  return false;
}

struct ComparisonRow {
  std::string label;
  double zenga = 0.0;
  double gini = 0.0;
  std::size_t zenga_rank = 0;
  std::size_t gini_rank = 0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  bool zenga_ties = false;
  bool gini_ties = false;
  /// True when the two indices order the inputs differently.
  bool orderings_differ = false;
};

inline Comparison compare_samples(const std::vector<GroupedSample>& samples, const std::vector<std::string>& labels) {
  if (samples.size() < 2) throw input_error("comparison needs at least two inputs");
  if (labels.size() != samples.size())
    throw input_error("got " + std::to_string(labels.size()) + " labels for " + std::to_string(samples.size()) +
                      " inputs");
  Comparison out;
  std::vector<double> z, g;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    z.push_back(zenga_empirical(samples[i].counts, samples[i].support).index);
    g.push_back(gini_empirical(samples[i].counts, samples[i].support));
  }
  const auto zr = ascending_ranks(z);
  const auto gr = ascending_ranks(g);
  for (std::size_t i = 0; i < samples.size(); ++i) out.rows.push_back({labels[i], z[i], g[i], zr[i], gr[i]});
  out.zenga_ties = has_ties(zr);
  out.gini_ties = has_ties(gr);
  out.orderings_differ = zr != gr;
  return out;
}

}  // namespace zenga
