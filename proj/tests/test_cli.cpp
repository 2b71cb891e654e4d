#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "sgm/cli.hpp"

namespace {

using namespace sgm;
namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sgm_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(SGM_CLI_PATH) + " " + args + " > " + path("stdout") +
                            " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST_F(CliTest, MatrixFileRoundTripIsExact) {
  Matrix m = sample_pd(4, 3, 100.0).matrix();
  m(0, 1) += Complex(0.0, 1.0 / 3.0);
  m(1, 0) -= Complex(0.0, 1.0 / 3.0);
  write_matrix_file(path("m.json"), m);
  const Matrix back = read_matrix_file(path("m.json"));
  EXPECT_EQ(back, m);
  const Matrix real = sample_pd(3, 4, 10.0).matrix().real().cast<Complex>();
  const auto j = matrix_to_json(real);
  EXPECT_FALSE(j["complex"].get<bool>());
  EXPECT_FALSE(j.contains("data_im"));
  EXPECT_EQ(matrix_from_json(j), real);
}

TEST_F(CliTest, MatrixFileValidation) {
  EXPECT_THROW(parse_matrix("{"), Error);
  EXPECT_THROW(parse_matrix(R"({"n": 2, "complex": false, "data_re": [1, 2, 3]})"), Error);
  EXPECT_THROW(parse_matrix(R"({"n": 1, "complex": true, "data_re": [1]})"), Error);
  EXPECT_THROW(parse_matrix(R"({"n": 0, "data_re": []})"), Error);
  try {
    parse_matrix(R"({"n": 1, "data_re": ["x"]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  EXPECT_EQ(parse_matrix(R"({"n": 1, "data_re": [2.5]})")(0, 0), Complex(2.5, 0.0));
}

TEST_F(CliTest, MeanCommand) {
  write_matrix_file(path("a.json"), sample_pd(3, 1, 10.0).matrix());
  write_matrix_file(path("b.json"), sample_pd(3, 2, 10.0).matrix());
  ASSERT_EQ(run("mean --a " + path("a.json") + " --b " + path("b.json") + " --t 0.3 --out " +
                path("m.json")),
            0);
  const Matrix expected = spectral_mean(read_pd_file(path("a.json")), read_pd_file(path("b.json")),
                                        Weight(0.3))
                              .matrix();
  EXPECT_EQ(read_matrix_file(path("m.json")), expected);
  ASSERT_EQ(run("mean --kind metric --a " + path("a.json") + " --b " + path("b.json")), 0);
  EXPECT_NE(slurp(path("stdout")).find("\"data_re\""), std::string::npos);
}

TEST_F(CliTest, MeanRejectsBadInput) {
  write_matrix_file(path("a.json"), sample_pd(3, 1, 10.0).matrix());
  write("bad.json", R"({"n": 2, "data_re": [1, 2, 2, 1]})");
  write("asym.json", R"({"n": 2, "data_re": [1, 2, 0, 1]})");
  write("junk.json", "not json");
  EXPECT_EQ(run("mean --a " + path("a.json") + " --b " + path("missing.json")), 2);
  EXPECT_EQ(run("mean --a " + path("bad.json") + " --b " + path("bad.json")), 2);
  EXPECT_NE(slurp(path("stderr")).find("NotPositiveDefinite"), std::string::npos);
  EXPECT_EQ(run("mean --a " + path("asym.json") + " --b " + path("asym.json")), 2);
  EXPECT_NE(slurp(path("stderr")).find("NonHermitianInput"), std::string::npos);
  EXPECT_EQ(run("mean --a " + path("junk.json") + " --b " + path("a.json")), 2);
  EXPECT_EQ(run("mean --a " + path("a.json") + " --b " + path("a.json") + " --t 1.5"), 2);
  EXPECT_EQ(run("nonsense"), 2);
}

TEST_F(CliTest, CounterexampleCommand) {
  EXPECT_EQ(run("counterexample remark37"), 0);
  const auto j = nlohmann::json::parse(slurp(path("stdout")));
  EXPECT_TRUE(j["reproduced"].get<bool>());
  EXPECT_TRUE(j["claim_refuted"].get<bool>());
  EXPECT_TRUE(j["witness"]["matrices"].contains("A"));
  EXPECT_EQ(run("counterexample loewner"), 0);
  EXPECT_EQ(run("counterexample nothing"), 2);
}

TEST_F(CliTest, SampleCommandIsDeterministic) {
  ASSERT_EQ(run("sample --n 4 --seed 9 --spread 50 --out " + path("s1.json")), 0);
  ASSERT_EQ(run("sample --n 4 --seed 9 --spread 50 --out " + path("s2.json")), 0);
  EXPECT_EQ(slurp(path("s1.json")), slurp(path("s2.json")));
  EXPECT_EQ(read_matrix_file(path("s1.json")), sample_pd(4, 9, 50.0).matrix());
  EXPECT_EQ(run("sample --n 0"), 2);
  EXPECT_EQ(run("sample --n 3 --spread 0.5"), 2);
}

TEST_F(CliTest, LimitCommand) {
  write_matrix_file(path("a.json"), sample_hermitian(3, 1, 100.0).matrix());
  write_matrix_file(path("b.json"), sample_hermitian(3, 2, 100.0).matrix());
  ASSERT_EQ(run("limit --a " + path("a.json") + " --b " + path("b.json") + " --t 0.5 --out " +
                path("limit.csv")),
            0);
  std::istringstream csv(slurp(path("limit.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "p,err_spectral_mean,err_sandwich,trace_spectral,trace_target");
  int rows = 0;
  double prev = 1e300;
  double last = 0.0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string p;
    std::string err;
    std::getline(fields, p, ',');
    std::getline(fields, err, ',');
    last = std::stod(err);
    EXPECT_LE(last, prev);
    prev = last;
  }
  EXPECT_EQ(rows, 11);
  EXPECT_LT(last, 1e-2);
  EXPECT_EQ(run("limit --a " + path("a.json") + " --b " + path("b.json") + " --p-min-exp 40"), 2);
}

TEST_F(CliTest, VerifyWritesReports) {
  const std::string out = path("out");
  ASSERT_EQ(run("verify --trials 3 --t 0.5,0.75 --dims 2-3 --limit-trials 1 --out " + out), 0);
  const std::string csv = slurp(out + "/report.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "check_id,trial,verdict,worst_margin,seed");
  const auto summary = nlohmann::json::parse(slurp(out + "/summary.json"));
  EXPECT_EQ(summary["status"], "ok");
  EXPECT_EQ(summary["violations"], 0);
  EXPECT_GT(summary["checks"].get<long>(), 10);
  // Same config, same bytes.
  ASSERT_EQ(run("verify --trials 3 --t 0.5,0.75 --dims 2-3 --limit-trials 1 --out " + out + "2"),
            0);
  EXPECT_EQ(slurp(out + "2/report.csv"), csv);
}

TEST_F(CliTest, VerifyConfigErrors) {
  EXPECT_EQ(run("verify --trials 1 --s 2.1 --out " + path("o")), 2);
  EXPECT_NE(slurp(path("stderr")).find("force-out-of-range"), std::string::npos);
  EXPECT_EQ(run("verify --trials 1 --t 2 --out " + path("o")), 2);
  EXPECT_EQ(run("verify --dims 6-2 --out " + path("o")), 2);
  write("cfg.json", R"({"trials": 1, "bogus": 3})");
  EXPECT_EQ(run("verify --config " + path("cfg.json") + " --out " + path("o")), 2);
}

TEST_F(CliTest, VerifyForcedOutOfRangeOnCounterexampleInputs) {
  write("cfg.json",
        R"({"trials": 2, "t": [0.3333333333333333], "s": [2.1], "dims": "2-2", "limit_trials": 0})");
  const std::string out = path("forced");
  EXPECT_EQ(run("verify --config " + path("cfg.json") + " --force-out-of-range --out " + out), 0);
  const std::string csv = slurp(out + "/report.csv");
  EXPECT_NE(csv.find("counterexample.natlog_bound,-1,false,"), std::string::npos);
  EXPECT_NE(csv.find("natlog[t=0.333333,s=2.1],0,"), std::string::npos);
}

TEST_F(CliTest, VerifyReportsViolations) {
  // s = 2 at t = 1/3 violates on enough random inputs.
  const std::string out = path("v");
  EXPECT_EQ(run("verify --trials 60 --t 0.3333333333333333 --s bound --r 1 --dims 2-2 "
                "--limit-trials 0 --out " + out),
            1);
  const auto summary = nlohmann::json::parse(slurp(out + "/summary.json"));
  EXPECT_EQ(summary["status"], "violations");
  ASSERT_FALSE(summary["failures"].empty());
  const auto& f = summary["failures"][0];
  EXPECT_EQ(f["check_id"], "natlog[t=0.333333,s=2]");
  EXPECT_TRUE(f["witness"]["matrices"].contains("B"));
}

TEST_F(CliTest, OutputDirFromEnvironment) {
  const std::string out = path("env");
  ::setenv("SGM_OUTPUT_DIR", out.c_str(), 1);
  EXPECT_EQ(cli::output_dir(std::nullopt), fs::path(out));
  EXPECT_EQ(cli::output_dir(std::string("x")), fs::path("x"));
  ::unsetenv("SGM_OUTPUT_DIR");
  EXPECT_EQ(cli::output_dir(std::nullopt), fs::path("."));
}

}  // namespace
