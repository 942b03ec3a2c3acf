#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("carleman_cli_test_" + std::to_string(getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

CliRun run(const std::string& args) {
  const fs::path err_file = scratch_dir() / ("stderr_" + std::to_string(getpid()) + ".txt");
  const std::string command = std::string(CARLEMAN_CLI_PATH) + " " + args + " 2>" + err_file.string();
  CliRun r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_file);
  return r;
}

int line_count(const std::string& s) {
  int n = 0;
  for (const char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, MatrixOfIdentity) {
  const CliRun r = run("matrix --coeffs 0,1 --dim 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "carleman dim=3 map=0,1\n1+0i,0+0i,0+0i\n0+0i,1+0i,0+0i\n0+0i,0+0i,1+0i\n");
}

TEST(Cli, IterateAgreesWithReference) {
  const CliRun r = run("iterate --preset logistic:4 --dim 40 --t 0.5,1 --x 0.01 --radius 0.1 --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = nlohmann::json::parse(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_TRUE(row.at("converged").get<bool>());
    const double got = row.at("value")[0];
    const double ref = row.at("reference")[0];
    EXPECT_NEAR(got, ref, 1e-7);
  }
}

TEST(Cli, IntegrateReachesTheMap) {
  const CliRun r = run("integrate --preset logistic:4 --dim 40 --x0 0.01 --t-end 1 --dt 0.001 --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto path = nlohmann::json::parse(r.out);
  EXPECT_EQ(path.size(), 1001u);
  EXPECT_NEAR(path.back().at("x")[0].get<double>(), 0.0396, 1e-6);
}

TEST(Cli, ExtendReachesBeyondTheChart) {
  const CliRun r = run("iterate --preset logistic:4 --dim 40 --guess 0.7 --t 1 --x 0.3 --extend --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = nlohmann::json::parse(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].at("value")[0].get<double>(), 0.84, 1e-9);
  EXPECT_EQ(run("iterate --preset logistic:4 --dim 40 --t 1 --x 0.3 --extend --route matrix").status, 3);
}

TEST(Cli, LyapunovJson) {
  const CliRun r = run("lyapunov --n 100000 --x0 0.123456");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("sigma_hat").get<double>(), std::log(2.0), 0.02 * std::log(2.0));
}

TEST(Cli, OutputFilesAreDeterministic) {
  const fs::path a = scratch_dir() / "a.csv";
  const fs::path b = scratch_dir() / "b.csv";
  const std::string args = "iterate --preset logistic:4 --dim 32 --t 0.25,0.5,0.75 --x 0.01,0.02 --route both -o ";
  ASSERT_EQ(run(args + a.string()).status, 0);
  ASSERT_EQ(run(args + b.string()).status, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path config = scratch_dir() / "run.toml";
  std::ofstream(config) << "preset = \"logistic:4\"\ndim = 40\nx0 = 0.01\nt-end = 0.5\ndt = 0.01\n";
  const CliRun from_file = run("integrate --config " + config.string());
  ASSERT_EQ(from_file.status, 0) << from_file.err;
  EXPECT_EQ(line_count(from_file.out), 52);
  const CliRun overridden = run("integrate --config " + config.string() + " --t-end 1");
  ASSERT_EQ(overridden.status, 0) << overridden.err;
  EXPECT_EQ(line_count(overridden.out), 102);
}

TEST(Cli, VerifySuitePasses) {
  const CliRun r = run("verify --suite logistic4");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_TRUE(report.at("passed").get<bool>());
  EXPECT_EQ(report.at("criteria").size(), 12u);
}

TEST(Cli, ErrorsAreOneLineWithStableCodes) {
  const struct {
    const char* args;
    int status;
    const char* code;
  } cases[] = {
      {"iterate --preset logistic:4 --dim 3 --t 1 --x 0.01", 3, "InvalidArgument"},
      {"matrix --coeffs 0,abc --dim 4", 4, "ParseError"},
      {"iterate --preset logistic:4 --dim 16 --t 0.5 --x 0.4", 16, "OutOfChart"},
      {"integrate --preset logistic:4 --dim 24 --x0 0.05 --t-end 3 --dt 0.01", 19, "ChartEscape"},
      {"lyapunov --n 1000 --x0 0", 20, "DomainError"},
      {"chart --coeffs 0,0,1 --dim 8 --guess 0", 11, "RestrictiveConditionViolated"},
      {"iterate --bogus", 2, "UsageError"},
  };
  for (const auto& c : cases) {
    const CliRun r = run(c.args);
    EXPECT_EQ(r.status, c.status) << c.args << "\n" << r.err;
    EXPECT_EQ(line_count(r.err), 1) << c.args << "\n" << r.err;
    EXPECT_EQ(r.err.rfind(std::string("error: code=") + c.code + " message=", 0), 0u) << r.err;
  }
}

TEST(Cli, EscapeStillWritesPartialTrajectory) {
  const CliRun r = run("integrate --preset logistic:4 --dim 24 --x0 0.05 --t-end 3 --dt 0.01");
  EXPECT_EQ(r.status, 19);
  EXPECT_EQ(r.out.rfind("t,re,im\n0,0.05,0\n", 0), 0u);
  EXPECT_GT(line_count(r.out), 2);
}
