// File formats: frequency-table CSV, distribution specs (JSON) and reports.
//
// Frequency CSV
//   header  class_lower,class_upper,count[,representative]
//   rows    plain decimal numbers, '.' as decimal point, no thousands separators;
//           count is a non-negative integer; representative may be left empty.
//
// Distribution spec (JSON object)
//   {"values": [..], "probs": [..], "label": "optional"}
//
// Reports are CSV (one row per record) or JSON. Floating-point numbers are
// written with 17 significant digits, which round-trips every double.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "zenga/asymptotics.hpp"
#include "zenga/distribution.hpp"
#include "zenga/indices.hpp"
#include "zenga/influence.hpp"
#include "zenga/montecarlo.hpp"

namespace zenga {

enum class ReportFormat { csv, json };

inline std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_double(std::string_view field, const std::string& where) {
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw input_error(where + ": '" + std::string(field) + "' is not a number");
  return v;
}

inline std::int64_t parse_count(std::string_view field, const std::string& where) {
  std::int64_t v = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw input_error(where + ": '" + std::string(field) + "' is not an integer count");
  if (v < 0) throw input_error(where + ": negative count");
  return v;
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

template <class Range, class F>
std::string json_array(const Range& r, F&& item) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : r) {
    if (!first) out += ", ";
    out += item(x);
    first = false;
  }
  return out + "]";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frequency tables

inline FrequencyTable parse_frequency_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool with_repr = false;
  FrequencyTable table;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split_commas(text);
    if (!have_header) {
      const bool base = fields.size() >= 3 && fields[0] == "class_lower" && fields[1] == "class_upper" &&
                        fields[2] == "count";
      with_repr = fields.size() == 4 && fields[3] == "representative";
      if (!base || fields.size() > 4 || (fields.size() == 4 && !with_repr))
        throw input_error("line " + std::to_string(line_no) +
                          ": expected header 'class_lower,class_upper,count[,representative]'");
      have_header = true;
      continue;
    }
    const std::string row = "line " + std::to_string(line_no);
    const std::size_t want = with_repr ? 4 : 3;
    if (fields.size() != want)
      throw input_error(row + ": expected " + std::to_string(want) + " fields, found " +
                        std::to_string(fields.size()));
    ClassRow r;
    r.lower = detail::parse_double(fields[0], row + ", class_lower");
    r.upper = detail::parse_double(fields[1], row + ", class_upper");
    r.count = detail::parse_count(fields[2], row + ", count");
    if (with_repr && !fields[3].empty()) r.representative = detail::parse_double(fields[3], row + ", representative");
    if (!(r.lower < r.upper)) throw input_error(row + ": class_lower must be below class_upper");
    if (!table.rows.empty() && r.lower < table.rows.back().upper)
      throw input_error(row + ": class overlaps the previous class");
    table.rows.push_back(r);
  }
  if (!have_header) throw input_error("frequency table is empty (missing header)");
  if (table.rows.empty()) throw input_error("frequency table has a header but no rows");
  return table;
}

inline void write_frequency_csv(std::ostream& out, const FrequencyTable& table) {
  const bool repr = table.has_representatives();
  out << "class_lower,class_upper,count" << (repr ? ",representative" : "") << '\n';
  for (const auto& r : table.rows) {
    out << format_number(r.lower) << ',' << format_number(r.upper) << ',' << r.count;
    if (repr) out << ',' << format_number(*r.representative);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Distribution specs

struct DistSpec {
  std::vector<double> values;
  std::vector<double> probs;
  std::optional<std::string> label;

  DiscreteDistribution to_distribution() const { return DiscreteDistribution(values, probs); }
};

inline DistSpec parse_dist_spec(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("distribution spec: syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("distribution spec: top level must be an object");
  for (const auto& [key, _] : doc.items())
    if (key != "values" && key != "probs" && key != "label")
      throw input_error("distribution spec: unknown key '" + key + "'");

  auto numbers = [&](const char* key) {
    if (!doc.contains(key)) throw input_error(std::string("distribution spec: missing '") + key + "'");
    const auto& arr = doc.at(key);
    if (!arr.is_array()) throw input_error(std::string("distribution spec: '") + key + "' must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number())
        throw input_error(std::string("distribution spec: ") + key + "[" + std::to_string(i) + "] is not a number");
      out.push_back(arr[i].get<double>());
    }
    return out;
  };

  DistSpec spec;
  spec.values = numbers("values");
  spec.probs = numbers("probs");
  if (spec.values.size() != spec.probs.size())
    throw input_error("distribution spec: 'values' has " + std::to_string(spec.values.size()) +
                      " entries but 'probs' has " + std::to_string(spec.probs.size()));
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw input_error("distribution spec: 'label' must be a string");
    spec.label = doc["label"].get<std::string>();
  }
  return spec;
}

inline void write_dist_spec(std::ostream& out, const DistSpec& spec) {
  auto num = [](double v) { return detail::json_number(v); };
  out << "{\n";
  if (spec.label) out << "  \"label\": " << detail::json_string(*spec.label) << ",\n";
  out << "  \"values\": " << detail::json_array(spec.values, num) << ",\n";
  out << "  \"probs\": " << detail::json_array(spec.probs, num) << "\n}\n";
}

// ---------------------------------------------------------------------------
// Reports

inline void write_report(std::ostream& out, const ZengaDecomposition& dec, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "j,weight,lower_mean,upper_mean,ratio,curve\n";
    for (const auto& t : dec.terms)
      out << t.j + 1 << ',' << format_number(t.weight) << ',' << format_number(t.lower_mean) << ','
          << format_number(t.upper_mean) << ',' << format_number(t.ratio) << ',' << format_number(t.curve())
          << '\n';
    return;
  }
  out << "{\n  \"index\": " << detail::json_number(dec.total) << ",\n  \"terms\": "
      << detail::json_array(dec.terms,
                            [](const ZengaTerm& t) {
                              return "{\"j\": " + std::to_string(t.j + 1) +
                                     ", \"weight\": " + detail::json_number(t.weight) +
                                     ", \"lower_mean\": " + detail::json_number(t.lower_mean) +
                                     ", \"upper_mean\": " + detail::json_number(t.upper_mean) +
                                     ", \"ratio\": " + detail::json_number(t.ratio) +
                                     ", \"curve\": " + detail::json_number(t.curve()) + "}";
                            })
      << "\n}\n";
}

/// Influence profile; `numeric` adds the contamination-quotient column.
inline void write_report(std::ostream& out, const InfluenceProfile& profile, ReportFormat format,
                         const std::vector<double>* numeric = nullptr) {
  if (format == ReportFormat::csv) {
    out << "x,if_value" << (numeric ? ",numeric_if" : "") << '\n';
    for (std::size_t k = 0; k < profile.points.size(); ++k) {
      out << format_number(profile.points[k].x) << ',' << format_number(profile.points[k].if_value);
      if (numeric) out << ',' << format_number(numeric->at(k));
      out << '\n';
    }
    return;
  }
  out << "{\n  \"if_variance\": " << detail::json_number(profile.if_variance) << ",\n  \"points\": [";
  for (std::size_t k = 0; k < profile.points.size(); ++k) {
    out << (k ? ", " : "") << "{\"x\": " << detail::json_number(profile.points[k].x)
        << ", \"if_value\": " << detail::json_number(profile.points[k].if_value);
    if (numeric) out << ", \"numeric_if\": " << detail::json_number(numeric->at(k));
    out << '}';
  }
  out << ']';
  if (numeric) {
    double dev = 0.0;
    for (std::size_t k = 0; k < profile.points.size(); ++k)
      dev = std::max(dev, std::abs(numeric->at(k) - profile.points[k].if_value));
    out << ",\n  \"max_abs_deviation\": " << detail::json_number(dev);
  }
  out << "\n}\n";
}

inline void write_report(std::ostream& out, const AsymptoticReport& r, ReportFormat format) {
  const std::vector<std::pair<const char*, std::string>> fields = {
      {"estimate", format_number(r.estimate)},
      {"n", std::to_string(r.n)},
      {"sigma2_literal", format_number(r.sigma2_literal)},
      {"sigma2_corrected", format_number(r.sigma2_corrected)},
      {"sigma2_delta", format_number(r.sigma2_delta)},
      {"sigma2_if", format_number(r.sigma2_if)},
      {"std_error", format_number(r.std_error)},
      {"ci_low", format_number(r.ci_low)},
      {"ci_high", format_number(r.ci_high)},
      {"level", format_number(r.level)},
      {"degenerate", r.degenerate ? "1" : "0"},
  };
  if (format == ReportFormat::csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
    out << '\n';
    return;
  }
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const bool boolean = std::string_view(fields[i].first) == "degenerate";
    out << "  \"" << fields[i].first << "\": "
        << (boolean ? (r.degenerate ? "true" : "false") : fields[i].second)
        << (i + 1 < fields.size() ? ",\n" : "\n");
  }
  out << "}\n";
}

inline void write_report(std::ostream& out, const StudyReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "size,erm,mse,rmse,sd_scaled,sigma_analytic,ks,coverage\n";
    for (const auto& s : report.sizes)
      out << s.size << ',' << format_number(s.erm) << ',' << format_number(s.mse) << ',' << format_number(s.rmse)
          << ',' << format_number(s.sd_scaled) << ',' << format_number(s.sigma_analytic) << ','
          << format_number(s.ks_distance) << ',' << format_number(s.coverage) << '\n';
    return;
  }
  out << "{\n  \"z_population\": " << detail::json_number(report.z_population) << ",\n  \"sizes\": "
      << detail::json_array(report.sizes,
                            [](const SizeSummary& s) {
                              return "{\"size\": " + std::to_string(s.size) +
                                     ", \"erm\": " + detail::json_number(s.erm) +
                                     ", \"mse\": " + detail::json_number(s.mse) +
                                     ", \"rmse\": " + detail::json_number(s.rmse) +
                                     ", \"sd_scaled\": " + detail::json_number(s.sd_scaled) +
                                     ", \"sigma_analytic\": " + detail::json_number(s.sigma_analytic) +
                                     ", \"ks\": " + detail::json_number(s.ks_distance) +
                                     ", \"coverage\": " + detail::json_number(s.coverage) + "}";
                            })
      << "\n}\n";
}

inline void write_qq_csv(std::ostream& out, const std::vector<QuantilePair>& qq) {
  out << "theoretical,empirical\n";
  for (const auto& q : qq) out << format_number(q.theoretical) << ',' << format_number(q.empirical) << '\n';
}

inline void write_kde_csv(std::ostream& out, const std::vector<DensityPoint>& kde) {
  out << "abscissa,density\n";
  for (const auto& d : kde) out << format_number(d.abscissa) << ',' << format_number(d.density) << '\n';
}

/// A CSV report read back as numbers.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw input_error("no column '" + std::string(name) + "'");
  }
};

inline NumericTable read_numeric_csv(std::istream& in) {
  NumericTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split_commas(text);
    if (t.header.empty()) {
      for (auto f : fields) t.header.emplace_back(f);
      continue;
    }
    if (fields.size() != t.header.size())
      throw input_error("line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                        " fields, found " + std::to_string(fields.size()));
    std::vector<double> row;
    for (std::size_t i = 0; i < fields.size(); ++i)
      row.push_back(detail::parse_double(fields[i], "line " + std::to_string(line_no) + ", " + t.header[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace zenga
