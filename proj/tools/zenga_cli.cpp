// zenga_cli: discrete Zenga index, its asymptotic variance and influence
// function, Monte Carlo studies, and Zenga/Gini comparisons of grouped data.
//
// Exit codes: 0 success, 2 usage or input error, 1 internal error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zenga/zenga.hpp"

namespace {

using namespace zenga;

/// Input stream for a path; "-" is standard input.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cin;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw input_error("cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

/// Output stream for a path; "-" is standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cout;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw input_error("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

DiscreteDistribution load_dist(const std::string& path) {
  Input in(path);
  return parse_dist_spec(in.get()).to_distribution();
}

GroupedSample load_freq(const std::string& path, RepresentativeRule rule) {
  Input in(path);
  return from_frequency_table(parse_frequency_csv(in.get()), rule);
}

std::string pct(double v, bool percent) { return format_number(percent ? 100.0 * v : v); }

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::string freq, dist, repr = "midpoint", format = "text";
  double level = 0.95;
  bool percent = false;
};

int run_compute(const ComputeArgs& a) {
  if (a.freq.empty() == a.dist.empty()) throw input_error("compute needs exactly one of --freq or --dist");
  if (!(a.level > 0.0 && a.level < 1.0)) throw input_error("--level must lie in (0, 1)");
  const auto rule = a.repr == "custom" ? RepresentativeRule::custom : RepresentativeRule::midpoint;

  std::optional<AsymptoticReport> ci;
  ZengaResult z{};
  double gini = 0.0;
  double sigma2 = 0.0;
  std::vector<double> support;
  if (!a.freq.empty()) {
    const GroupedSample s = load_freq(a.freq, rule);
    z = zenga_empirical(s.counts, s.support);
    gini = gini_empirical(s.counts, s.support);
    ci = confidence_interval(s.counts, s.support, a.level);
    sigma2 = ci->sigma2_corrected;
    support = s.support;
  } else {
    const DiscreteDistribution d = load_dist(a.dist);
    z = zenga_population(d);
    gini = gini_population(d);
    sigma2 = asymptotic_variance(d, VarianceMode::corrected);
    support = d.values();
  }

  auto& out = std::cout;
  if (a.format == "json") {
    out << "{\n  \"zenga\": " << pct(z.index, a.percent) << ",\n  \"gini\": " << pct(gini, a.percent)
        << ",\n  \"asymptotic_sd\": " << format_number(std::sqrt(sigma2));
    if (ci) {
      out << ",\n  \"n\": " << ci->n << ",\n  \"std_error\": " << pct(ci->std_error, a.percent)
          << ",\n  \"level\": " << format_number(ci->level) << ",\n  \"ci_low\": " << pct(ci->ci_low, a.percent)
          << ",\n  \"ci_high\": " << pct(ci->ci_high, a.percent);
    }
    out << ",\n  \"curve\": [";
    for (std::size_t i = 0; i < z.decomposition.terms.size(); ++i) {
      const auto& t = z.decomposition.terms[i];
      out << (i ? ", " : "") << "{\"x\": " << format_number(support[t.j]) << ", \"weight\": "
          << format_number(t.weight) << ", \"ratio\": " << format_number(t.ratio) << ", \"curve\": "
          << format_number(t.curve()) << "}";
    }
    out << "]\n}\n";
    return 0;
  }
  out << "zenga          " << pct(z.index, a.percent) << '\n';
  out << "gini           " << pct(gini, a.percent) << '\n';
  out << "asymptotic_sd  " << format_number(std::sqrt(sigma2)) << '\n';
  if (ci) {
    out << "n              " << ci->n << '\n';
    out << "std_error      " << pct(ci->std_error, a.percent) << '\n';
    char level[32];
    std::snprintf(level, sizeof level, "%g", ci->level);
    out << "ci (level " << level << ")  [" << pct(ci->ci_low, a.percent) << ", "
        << pct(ci->ci_high, a.percent) << "]" << (ci->degenerate ? "  (single observed point)" : "") << '\n';
  } else {
    out << "ci             n/a (population law; pass --freq count data for an interval)\n";
  }
  out << "\nzenga curve\nx,weight,lower_mean,upper_mean,ratio,curve\n";
  for (const auto& t : z.decomposition.terms)
    out << format_number(support[t.j]) << ',' << format_number(t.weight) << ',' << format_number(t.lower_mean)
        << ',' << format_number(t.upper_mean) << ',' << format_number(t.ratio) << ',' << format_number(t.curve())
        << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string dist, sizes, out = "-", qq, kde, format = "csv";
  std::int64_t reps = 3000;
  std::uint64_t seed = 42;
  double level = 0.95;
  unsigned threads = 0;
};

std::vector<std::int64_t> parse_sizes(const std::string& list) {
  std::vector<std::int64_t> sizes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::int64_t v = 0;
    const auto* b = item.data();
    const auto* e = b + item.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (item.empty() || ec != std::errc() || p != e) throw input_error("--sizes: '" + item + "' is not an integer");
    if (v < 2) throw input_error("--sizes: every size must be at least 2 (got " + item + ")");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw input_error("--sizes is empty");
  return sizes;
}

int run_simulate(const SimulateArgs& a) {
  StudyConfig cfg{load_dist(a.dist), parse_sizes(a.sizes), a.reps, a.seed, a.level, a.threads};
  const StudyReport report = run_study(cfg);
  {
    Output out(a.out);
    write_report(out.get(), report, a.format == "json" ? ReportFormat::json : ReportFormat::csv);
  }
  if (!a.qq.empty()) {
    Output out(a.qq);
    write_qq_csv(out.get(), report.qq);
  }
  if (!a.kde.empty()) {
    Output out(a.kde);
    write_kde_csv(out.get(), report.kde);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct InfluenceArgs {
  std::string dist, format = "csv";
  bool numeric = false;
  std::optional<double> eps;
};

int run_influence(const InfluenceArgs& a) {
  if (a.eps && !a.numeric) throw input_error("--eps is only valid together with --numeric");
  const DiscreteDistribution d = load_dist(a.dist);
  const InfluenceProfile profile = influence_profile(d);
  std::vector<double> numeric;
  double max_dev = 0.0;
  if (a.numeric) {
    const double eps = a.eps.value_or(1e-6);
    for (std::size_t k = 0; k < d.size(); ++k) {
      numeric.push_back(d.size() == 1 ? 0.0 : numeric_influence(d, k, eps));
      max_dev = std::max(max_dev, std::abs(numeric.back() - profile.points[k].if_value));
    }
  }
  if (a.format == "json") {
    write_report(std::cout, profile, ReportFormat::json, a.numeric ? &numeric : nullptr);
    return 0;
  }
  write_report(std::cout, profile, ReportFormat::csv, a.numeric ? &numeric : nullptr);
  std::cout << "# if_variance " << format_number(profile.if_variance) << '\n';
  if (a.numeric) std::cout << "# max_abs_deviation " << format_number(max_dev) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct VarianceArgs {
  std::string dist, mode = "corrected";
};

int run_variance(const VarianceArgs& a) {
  const DiscreteDistribution d = load_dist(a.dist);
  auto& out = std::cout;
  if (a.mode == "literal") out << "literal " << format_number(asymptotic_variance(d, VarianceMode::literal)) << '\n';
  if (a.mode == "corrected")
    out << "corrected " << format_number(asymptotic_variance(d, VarianceMode::corrected)) << '\n';
  if (a.mode == "delta") out << "delta " << format_number(delta_variance(d)) << '\n';
  if (a.mode == "if") out << "if " << format_number(influence_profile(d).if_variance) << '\n';
  if (a.mode != "all") return 0;

  const VarianceSet v = variance_set(d);
  const std::vector<std::pair<std::string, double>> paths = {
      {"literal", v.literal}, {"corrected", v.corrected}, {"delta", v.delta}, {"if", v.influence}};
  for (const auto& [name, value] : paths) out << name << ' ' << format_number(value) << '\n';
  out << "\npairwise relative differences\n";
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t k = i + 1; k < paths.size(); ++k)
      out << paths[i].first << '/' << paths[k].first << ' '
          << format_number(relative_difference(paths[i].second, paths[k].second)) << '\n';
  const double gap = relative_difference(v.literal, v.corrected);
  if (gap > 1e-6)
    out << "\nnote: literal H (E coefficient (p*_j)^-2) disagrees with the corrected H by "
        << std::setprecision(3) << 100.0 * gap
        << "%; the corrected variance matches the delta-method and influence-function paths\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::vector<std::string> freq;
  std::string labels, index = "both", repr = "midpoint";
  bool percent = false;
};

int run_compare(const CompareArgs& a) {
  if (a.freq.size() < 2) throw input_error("compare needs at least two --freq inputs");
  std::vector<std::string> labels;
  if (a.labels.empty()) {
    for (const auto& f : a.freq) labels.push_back(f);
  } else {
    std::stringstream ss(a.labels);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
  }
  const auto rule = a.repr == "custom" ? RepresentativeRule::custom : RepresentativeRule::midpoint;
  std::vector<GroupedSample> samples;
  for (const auto& f : a.freq) samples.push_back(load_freq(f, rule));
  const Comparison c = compare_samples(samples, labels);

  const bool zen = a.index != "gini";
  const bool gin = a.index != "zenga";
  auto& out = std::cout;
  out << "label";
  if (zen) out << ",zenga";
  if (gin) out << ",gini";
  if (zen) out << ",zenga_rank";
  if (gin) out << ",gini_rank";
  out << '\n';
  for (const auto& r : c.rows) {
    out << r.label;
    if (zen) out << ',' << pct(r.zenga, a.percent);
    if (gin) out << ',' << pct(r.gini, a.percent);
    if (zen) out << ',' << r.zenga_rank;
    if (gin) out << ',' << r.gini_rank;
    out << '\n';
  }
  if (zen && c.zenga_ties) out << "# tie in zenga ranking\n";
  if (gin && c.gini_ties) out << "# tie in gini ranking\n";
  if (zen && gin) out << (c.orderings_differ ? "# zenga and gini order the inputs differently\n"
                                             : "# zenga and gini agree on the ordering\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Zenga inequality index: estimation, asymptotics, influence, simulation"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Zenga and Gini indices, Zenga curve, standard error and CI");
  c->add_option("--freq", compute.freq, "frequency-table CSV ('-' for stdin)");
  c->add_option("--dist", compute.dist, "distribution spec JSON ('-' for stdin)");
  c->add_option("--repr", compute.repr, "class representative rule")->check(CLI::IsMember({"midpoint", "custom"}));
  c->add_option("--level", compute.level, "confidence level");
  c->add_flag("--percent", compute.percent, "print indices multiplied by 100");
  c->add_option("--format", compute.format)->check(CLI::IsMember({"text", "json"}));

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo study of the plug-in estimator");
  s->add_option("--dist", sim.dist, "distribution spec JSON")->required();
  s->add_option("--sizes", sim.sizes, "comma-separated sample sizes")->required();
  s->add_option("--reps", sim.reps, "replicates per size (>= 100)");
  s->add_option("--seed", sim.seed, "master seed");
  s->add_option("--level", sim.level, "CI level for coverage");
  s->add_option("--threads", sim.threads, "worker threads (0 = all cores)");
  s->add_option("--out", sim.out, "report path ('-' for stdout)");
  s->add_option("--qq", sim.qq, "QQ pairs CSV for the largest size");
  s->add_option("--kde", sim.kde, "kernel density CSV for the largest size");
  s->add_option("--format", sim.format)->check(CLI::IsMember({"csv", "json"}));

  InfluenceArgs inf;
  auto* i = app.add_subcommand("influence", "influence function at every support point");
  i->add_option("--dist", inf.dist, "distribution spec JSON")->required();
  i->add_flag("--numeric", inf.numeric, "add the contamination-quotient column");
  i->add_option("--eps", inf.eps, "contamination mass (with --numeric)");
  i->add_option("--format", inf.format)->check(CLI::IsMember({"csv", "json"}));

  VarianceArgs var;
  auto* v = app.add_subcommand("variance", "asymptotic variance of sqrt(n)(Z_n - Z)");
  v->add_option("--dist", var.dist, "distribution spec JSON")->required();
  v->add_option("--mode", var.mode)->check(CLI::IsMember({"literal", "corrected", "delta", "if", "all"}));

  CompareArgs cmp;
  auto* k = app.add_subcommand("compare", "rank grouped datasets by Zenga and Gini");
  k->add_option("--freq", cmp.freq, "frequency-table CSVs")->required()->expected(1, -1);
  k->add_option("--labels", cmp.labels, "comma-separated labels");
  k->add_option("--index", cmp.index)->check(CLI::IsMember({"zenga", "gini", "both"}));
  k->add_option("--repr", cmp.repr)->check(CLI::IsMember({"midpoint", "custom"}));
  k->add_flag("--percent", cmp.percent, "print indices multiplied by 100");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c->parsed()) return run_compute(compute);
    if (s->parsed()) return run_simulate(sim);
    if (i->parsed()) return run_influence(inf);
    if (v->parsed()) return run_variance(var);
    if (k->parsed()) return run_compare(cmp);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
