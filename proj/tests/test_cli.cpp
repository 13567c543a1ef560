// End-to-end checks of the command-line tool.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(ZENGA_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(ZENGA_DATA_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("zenga_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, ComputeTwoPoint) {
  const auto r = run("compute --dist " + data("twopoint.json") + " --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["zenga"].get<double>(), 5.0 / 6, 1e-15);
  EXPECT_EQ(j["gini"].get<double>(), 0.25);
  EXPECT_NEAR(j["asymptotic_sd"].get<double>(), 1.0 / 6, 1e-15);
}

TEST(Cli, ComputeFrequencyTableAndPercent) {
  auto r = run("compute --freq " + data("classes.csv") + " --repr midpoint --format json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["zenga"].get<double>(), 0.75, 1e-15);
  EXPECT_EQ(j["n"].get<int>(), 4);
  EXPECT_LE(j["ci_low"].get<double>(), 0.75);

  r = run("compute --dist " + data("table5.json") + " --percent --format json");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["zenga"].get<double>(), 59.38717749660928, 1e-12);

  r = run("compute --dist " + data("table5.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("zenga curve"), std::string::npos);
}

TEST(Cli, ComputeFromStdin) {
  const auto r = run("compute --freq - --format json < " + data("classes.csv"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["zenga"].get<double>(), 0.75, 1e-15);
}

TEST(Cli, InfluenceProfile) {
  auto r = run("influence --dist " + data("twopoint.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,-0.16666666666666666\n3,0.16666666666666666\n"), std::string::npos);
  EXPECT_NE(r.out.find("# if_variance 0.027777777777777776"), std::string::npos);

  r = run("influence --dist " + data("twopoint.json") + " --numeric --eps 1e-6 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["max_abs_deviation"].get<double>(), 1e-5);

  r = run("influence --dist " + data("single.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1000,0\n"), std::string::npos);
}

TEST(Cli, VarianceModes) {
  auto r = run("variance --dist " + data("twopoint.json") + " --mode all");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("corrected 0.027777777777777"), std::string::npos);
  EXPECT_NE(r.out.find("literal 2.25"), std::string::npos);
  EXPECT_NE(r.out.find("note: literal H"), std::string::npos);

  r = run("variance --dist " + data("single.json") + " --mode corrected");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "corrected 0\n");

  const auto c = run("variance --dist " + data("table5.json") + " --mode corrected");
  const auto d = run("variance --dist " + data("table5.json") + " --mode delta");
  const double vc = std::stod(c.out.substr(c.out.find(' ')));
  const double vd = std::stod(d.out.substr(d.out.find(' ')));
  EXPECT_LT(std::abs(vc - vd) / vc, 1e-4);
}

TEST(Cli, CompareSpreadRegionRankedMoreUnequal) {
  const auto r = run("compare --freq " + data("region_a.csv") + " " + data("region_b.csv") + " --labels A,B");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("label,zenga,gini,zenga_rank,gini_rank\n"), std::string::npos);
  EXPECT_NE(r.out.find(",1,1\n"), std::string::npos);
  const auto b_row = r.out.find("B,");
  ASSERT_NE(b_row, std::string::npos);
  EXPECT_NE(r.out.find(",2,2\n", b_row), std::string::npos);
}

TEST(Cli, CompareTiesAndSchema) {
  auto r = run("compare --freq " + data("region_a.csv") + " " + data("region_a.csv") + " --labels X,Y");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("# tie in zenga ranking"), std::string::npos);
  EXPECT_NE(r.out.find("X"), std::string::npos);

  r = run("compare --freq " + data("region_a.csv") + " " + data("region_b.csv") + " " + data("region_c.csv") +
          " --labels A,B,C --repr midpoint --index both");
  ASSERT_EQ(r.code, 0);
  int lines = 0;
  for (char ch : r.out.substr(0, r.out.find('#'))) lines += ch == '\n';
  EXPECT_EQ(lines, 4);

  r = run("compare --freq " + data("region_a.csv") + " " + data("region_b.csv") + " --index gini");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("zenga"), std::string::npos);
}

TEST(Cli, SimulateIsReproducible) {
  const auto dir = temp_dir();
  const std::string common = "simulate --dist " + data("table5.json") + " --sizes 50,100 --reps 100 --seed 7";
  for (int i = 0; i < 2; ++i) {
    const auto s = std::to_string(i);
    const auto r = run(common + " --out " + (dir / ("r" + s)).string() + " --qq " + (dir / ("q" + s)).string() +
                       " --kde " + (dir / ("k" + s)).string());
    ASSERT_EQ(r.code, 0);
  }
  EXPECT_EQ(slurp(dir / "r0"), slurp(dir / "r1"));
  EXPECT_EQ(slurp(dir / "q0"), slurp(dir / "q1"));
  EXPECT_EQ(slurp(dir / "k0"), slurp(dir / "k1"));
  EXPECT_EQ(slurp(dir / "r0").rfind("size,erm,mse,rmse,sd_scaled,sigma_analytic,ks,coverage\n", 0), 0u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("compute").code, 2);
  EXPECT_EQ(run("compute --dist a --freq b").code, 2);
  EXPECT_EQ(run("compute --dist /nonexistent.json").code, 2);
  EXPECT_EQ(run("influence --dist " + data("twopoint.json") + " --eps 1e-6").code, 2);
  EXPECT_EQ(run("influence --dist " + data("twopoint.json") + " --numeric --eps 0.5").code, 2);
  EXPECT_EQ(run("variance --dist " + data("twopoint.json") + " --mode fancy").code, 2);
  EXPECT_EQ(run("simulate --dist " + data("twopoint.json") + " --sizes 100 --reps 99").code, 2);
  EXPECT_EQ(run("simulate --dist " + data("twopoint.json") + " --sizes 100,1").code, 2);
  EXPECT_EQ(run("simulate --dist " + data("twopoint.json") + " --sizes 100,abc").code, 2);
  EXPECT_EQ(run("compare --freq " + data("region_a.csv")).code, 2);
  EXPECT_EQ(run("compare --freq " + data("region_a.csv") + " " + data("region_b.csv") + " --labels A").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, MalformedInputNamesTheRow) {
  const auto dir = temp_dir();
  const auto bad = dir / "bad.csv";
  std::ofstream(bad) << "class_lower,class_upper,count\n0,10,3\n10,20,oops\n";
  const auto r = run("compute --freq " + bad.string(), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3, count"), std::string::npos) << r.out;

  const auto spec = dir / "bad.json";
  std::ofstream(spec) << R"({"values": [1, 3], "probs": [0.45, 0.45]})";
  const auto s = run("compute --dist " + spec.string(), true);
  EXPECT_EQ(s.code, 2);
  EXPECT_NE(s.out.find("probs sum"), std::string::npos) << s.out;
  std::filesystem::remove_all(dir);
}
