#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "zenga/io.hpp"

using namespace zenga;

namespace {

FrequencyTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_frequency_csv(in);
}

std::string error_of(const std::string& text) {
  try {
    parse_csv(text);
  } catch (const input_error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(FrequencyCsv, Minimal) {
  const auto t = parse_csv("class_lower,class_upper,count\n0,10,3\n10,20,1\n");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].count, 3);
  EXPECT_EQ(t.rows[1].lower, 10.0);
  EXPECT_FALSE(t.has_representatives());
}

TEST(FrequencyCsv, RepresentativeColumnAndCrlf) {
  const auto t = parse_csv("class_lower,class_upper,count,representative\r\n0,10,3,4\r\n10,20,1,12.5\r\n");
  ASSERT_TRUE(t.has_representatives());
  const auto g = from_frequency_table(t, RepresentativeRule::custom);
  EXPECT_EQ(g.support, (std::vector<double>{4, 12.5}));
}

TEST(FrequencyCsv, SimulationLawFile) {
  std::ifstream in(ZENGA_DATA_DIR "/table5_classes.csv");
  ASSERT_TRUE(in);
  const auto g = from_frequency_table(parse_frequency_csv(in), RepresentativeRule::midpoint);
  EXPECT_EQ(g.support, fixtures::table5().values());
}

TEST(FrequencyCsv, RowLevelErrors) {
  EXPECT_NE(error_of("").find("missing header"), std::string::npos);
  EXPECT_NE(error_of("lower,upper,count\n0,1,1\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count,weight\n").find("header"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n").find("no rows"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,10,3\n10,20,x\n").find("line 3, count"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,10,-3\n").find("negative"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,10,3,4\n").find("line 2: expected 3 fields"),
            std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,4.515.000,3\n").find("class_upper"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,10,2.5\n").find("integer"), std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n0,10,1\n5,20,1\n").find("line 3: class overlaps"),
            std::string::npos);
  EXPECT_NE(error_of("class_lower,class_upper,count\n10,0,1\n").find("line 2"), std::string::npos);
}

TEST(FrequencyCsv, RoundTripUnderCustomRule) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> count(0, 40);
  std::uniform_real_distribution<double> width(0.1, 1e5);
  for (int t = 0; t < 30; ++t) {
    FrequencyTable table;
    double lo = width(rng);
    for (int i = 0; i < 8; ++i) {
      const double hi = lo + width(rng);
      table.rows.push_back({lo, hi, count(rng) + (i == 0), lo + (hi - lo) / 3.0});
      lo = hi;
    }
    std::ostringstream out;
    write_frequency_csv(out, table);
    const auto back = parse_csv(out.str());
    ASSERT_EQ(back.rows.size(), table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      EXPECT_EQ(back.rows[i].lower, table.rows[i].lower);
      EXPECT_EQ(back.rows[i].upper, table.rows[i].upper);
      EXPECT_EQ(back.rows[i].count, table.rows[i].count);
      EXPECT_EQ(back.rows[i].representative, table.rows[i].representative);
    }
    const auto a = from_frequency_table(table, RepresentativeRule::custom);
    const auto b = from_frequency_table(back, RepresentativeRule::custom);
    EXPECT_EQ(a.support, b.support);
    EXPECT_EQ(a.counts.counts(), b.counts.counts());
  }
}

TEST(DistSpec, ParseAndValidate) {
  std::istringstream ok(R"({"values": [1, 3], "probs": [0.5, 0.5]})");
  const auto spec = parse_dist_spec(ok);
  EXPECT_FALSE(spec.label);
  EXPECT_NEAR(zenga_population(spec.to_distribution()).index, 5.0 / 6, 1e-15);

  std::istringstream short_sum(R"({"values": [1, 3], "probs": [0.45, 0.45]})");
  const auto bad = parse_dist_spec(short_sum);
  EXPECT_THROW(bad.to_distribution(), input_error);

  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(parse_dist_spec(in), input_error) << text;
  };
  fails("{\"values\": [1, 3], \"probs\": [0.5]}");
  fails("{\"values\": [1, 3], \"probs\": [0.5, 0.5]");
  fails("{\"values\": [1, \"a\"], \"probs\": [0.5, 0.5]}");
  fails("{\"values\": [1, 3]}");
  fails("{\"values\": [1, 3], \"probs\": [0.5, 0.5], \"weights\": [1, 1]}");
  fails("[1, 2]");
}

TEST(DistSpec, SimulationLawFile) {
  std::ifstream in(ZENGA_DATA_DIR "/table5.json");
  ASSERT_TRUE(in);
  const auto d = parse_dist_spec(in).to_distribution();
  EXPECT_NEAR(zenga_population(d).index, fixtures::kTable5Zenga, 1e-15);
}

TEST(DistSpec, RoundTrip) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    const auto d = fixtures::random_distribution(rng);
    DistSpec spec{d.values(), d.probs(), t % 2 ? std::optional<std::string>("law \"" + std::to_string(t) + "\"")
                                               : std::nullopt};
    std::ostringstream out;
    write_dist_spec(out, spec);
    std::istringstream in(out.str());
    const auto back = parse_dist_spec(in);
    EXPECT_EQ(back.values, spec.values);
    EXPECT_EQ(back.probs, spec.probs);
    EXPECT_EQ(back.label, spec.label);
  }
}

TEST(Reports, InfluenceCsv) {
  std::ostringstream out;
  write_report(out, influence_profile(fixtures::two_point()), ReportFormat::csv);
  EXPECT_EQ(out.str(), "x,if_value\n1,-0.16666666666666666\n3,0.16666666666666666\n");
}

TEST(Reports, NumbersRoundTripExactly) {
  for (double v : {1.0 / 3, 0.1, 1e-300, 6.02214076e23, -2.5, 0.0})
    EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Reports, StudyCsvSchemaAndReparse) {
  StudyReport r;
  r.sizes.push_back({100, 1.0 / 3, 0.01, 0.1, 0.5, 0.4, 0.02, 0.95});
  r.sizes.push_back({200, -1e-5, 0.004, 0.0632, 0.45, 0.4, 0.01, 0.94});
  std::ostringstream out;
  write_report(out, r, ReportFormat::csv);
  std::istringstream in(out.str());
  const auto t = read_numeric_csv(in);
  EXPECT_EQ(t.header, (std::vector<std::string>{"size", "erm", "mse", "rmse", "sd_scaled", "sigma_analytic", "ks",
                                                "coverage"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][t.column("erm")], 1.0 / 3);
  EXPECT_EQ(t.rows[1][t.column("size")], 200.0);
}

TEST(Reports, JsonOutputsParse) {
  const auto d = fixtures::table5();
  std::vector<std::string> docs;
  std::ostringstream a, b, c, e;
  write_report(a, influence_profile(d), ReportFormat::json);
  write_report(b, confidence_interval(CountVector({5, 5, 5, 5, 10, 10, 20, 20, 10, 10}), d.values(), 0.95),
               ReportFormat::json);
  write_report(c, zenga_population(d).decomposition, ReportFormat::json);
  StudyReport r;
  r.z_population = 0.5;
  r.sizes.push_back({100, 1.0 / 3, 0.01, 0.1, 0.5, 0.4, 0.02, 0.95});
  write_report(e, r, ReportFormat::json);
  for (const auto* s : {&a, &b, &c, &e}) EXPECT_NO_THROW((void)nlohmann::json::parse(s->str())) << s->str();

  const auto j = nlohmann::json::parse(a.str());
  EXPECT_EQ(j["if_variance"].get<double>(), influence_profile(d).if_variance);
  const auto k = nlohmann::json::parse(b.str());
  EXPECT_EQ(k["estimate"].get<double>(), zenga_population(d).index);
}

TEST(Reports, AsymptoticCsvReparses) {
  std::ostringstream out;
  const auto rep = confidence_interval(CountVector({1, 1}), {1, 3}, 0.95);
  write_report(out, rep, ReportFormat::csv);
  std::istringstream in(out.str());
  const auto t = read_numeric_csv(in);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][t.column("sigma2_corrected")], rep.sigma2_corrected);
  EXPECT_EQ(t.rows[0][t.column("ci_low")], rep.ci_low);
}
