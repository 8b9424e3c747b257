#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KRONECKER_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (const auto n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("kronecker_cli_test_" + name);
}

TEST(Cli, GapsCsvCarriesBothRoutes) {
  const auto r = run("gaps --alpha 2/7 --dim 1 --nhi 3 --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("N,g_fast,g_oracle,match\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n3,2,2,true\n"), std::string::npos);
}

TEST(Cli, GapsCheckAndOracleOnly) {
  EXPECT_EQ(run("gaps --alpha golden:depth=20 --nlo 2 --nhi 200 --check --no-timestamp").status, 0);
  const auto r = run("gaps --alpha 2/7 --nhi 3 --oracle --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\n3,,2,\n"), std::string::npos);
}

TEST(Cli, ContinuedFraction) {
  const auto r = run("cf 89/144 --no-timestamp");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"[0;1,1,1,1,1,1,1,1,1,2]\""), std::string::npos);
  const auto csv = run("cf --input \"[0;(2)]\" --count 4 --format csv");
  EXPECT_EQ(csv.out, "n,a,p,q\n1,2,1,2\n2,2,2,5\n3,2,5,12\n4,2,12,29\n");
}

TEST(Cli, VerifyRejectsOneTermSequence) {
  const auto path = temp_file("one_term.csv");
  {
    std::ofstream f(path);
    f << "# kronecker-bda 1\n# alpha=1/3,1/3\n# norm=linf\n# q_max=2\n# hit_zero=false\n"
         "q,r_numerator,r_denominator,norm\n1,1,3,linf\n";
  }
  EXPECT_EQ(run("verify --seq " + path.string()).status, 2);
}

TEST(Cli, BdaRoundTripsThroughVerify) {
  const auto path = temp_file("seq.csv");
  EXPECT_EQ(run("bda --alpha random:prime=1000003,seed=4 --dim 2 --norm l2 --qmax 200000 --format csv --out " +
                path.string())
                .status,
            0);
  const auto r = run("verify --seq " + path.string() + " --shift 4 --no-timestamp");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"passed\": true"), std::string::npos);
}

TEST(Cli, ByteIdenticalWithoutTimestamp) {
  const std::string args = "search --dim 2 --budget 5 --nmax 300 --seed 3 --no-timestamp";
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("sample --dim 1 --samples 3 --seed 2 --qmax 10000 --no-timestamp").out,
            run("sample --dim 1 --samples 3 --seed 2 --qmax 10000 --no-timestamp").out);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto path = temp_file("run.ini");
  {
    std::ofstream f(path);
    f << "alpha=2/7\nnhi=3\nformat=csv\n";
  }
  const auto r = run("gaps --config " + path.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\n3,2,2,true\n"), std::string::npos);
  const auto over = run("gaps --config " + path.string() + " --nhi 2");
  EXPECT_EQ(over.out.find("\n3,"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitTwo) {
  EXPECT_EQ(run("bda --alpha 1/0").status, 2);
  EXPECT_EQ(run("bda --alpha 2/7 --qmax 7").status, 2);
  EXPECT_EQ(run("gaps --alpha 2/7 --nhi 3 --format xml").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("bda --alpha 2/7 --qmax 6 --out /nonexistent-dir/x.json").status, 2);
}

}  // namespace
