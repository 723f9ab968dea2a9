#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "aglstab/cli.hpp"

namespace aglstab {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "aglstab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

TEST(Cli, TableQ2) {
  const CliRun r = run({"table", "--p", "2", "--alpha", "1"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,d,odp,i,j,beta,N");
  EXPECT_TRUE(has(r.out, "\n1,1,1,1,0,0,2\n"));
}

TEST(Cli, TableQ5) {
  const CliRun r = run({"table", "--p", "5", "--alpha", "1", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "\n2,2,1,1,0,0,2\n"));
}

TEST(Cli, TableRejectsNonPrime) {
  const CliRun r = run({"table", "--p", "4", "--alpha", "1"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(has(r.err, "4 is not prime"));
  EXPECT_EQ(run({"table", "--q", "12"}).code, kExitInputError);
}

TEST(Cli, TableJsonAndFullRange) {
  const CliRun r = run({"table", "--q", "4", "--format", "json", "--full-range"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "\"k\": 4"));
  EXPECT_TRUE(has(r.out, "\"N\": \"1\""));
}

TEST(Cli, TableIsDeterministic) {
  EXPECT_EQ(run({"table", "--q", "64", "--workers", "1"}).out,
            run({"table", "--q", "64", "--workers", "8"}).out);
}

TEST(Cli, Count) {
  CliRun r = run({"count", "--p", "7", "--alpha", "1", "--k", "3", "--d", "3", "--i", "1", "--j", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "3,3,1,1,0,0,2"));
  r = run({"count", "--p", "7", "--alpha", "1", "--k", "3", "--d", "1", "--i", "1", "--j", "0"});
  EXPECT_TRUE(has(r.out, "3,1,1,1,0,0,0"));
  r = run({"count", "--p", "7", "--alpha", "1", "--k", "2", "--d", "3", "--i", "1", "--j", "0"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(has(r.err, "not congruent"));
  r = run({"count", "--q", "7", "--k", "3", "--d", "4", "--i", "1", "--j", "0"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(has(r.err, "does not divide"));
  EXPECT_EQ(run({"count", "--q", "7", "--k", "3"}).code, kExitInputError);
}

TEST(Cli, Verify) {
  CliRun r = run({"verify", "--q", "7"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "all 64 checks agree"));
  r = run({"verify", "--q", "8", "--max-k", "4", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_FALSE(has(r.out, "FAIL"));
  EXPECT_EQ(run({"verify", "--q", "1024"}).code, kExitBudgetExceeded);
  EXPECT_EQ(run({"verify", "--q", "16", "--oracle-budget", "10"}).code, kExitBudgetExceeded);
}

TEST(Cli, Design) {
  const CliRun r = run({"design", "--q", "7", "--k", "3", "--d", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "(v,b,r,k,lambda) = (7,14,6,3,2)"));
  EXPECT_TRUE(has(r.out, "code: n=14 d=8 w=6 size=7"));
  EXPECT_TRUE(has(r.out, "johnson: 56/8 = 7 (equality)"));
  EXPECT_TRUE(has(r.out, "A2(14,8,6) = 7"));

  const CliRun by_subset = run({"design", "--q", "7", "--subset", "1,2,4"});
  EXPECT_EQ(by_subset.code, kExitOk);
  EXPECT_EQ(by_subset.out, r.out);
}

TEST(Cli, DesignErrors) {
  CliRun r = run({"design", "--q", "7", "--k", "3", "--d", "6"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(has(r.err, "N = 0"));
  EXPECT_EQ(run({"design", "--q", "7", "--subset", "1,2,9"}).code, kExitInputError);
  EXPECT_EQ(run({"design", "--q", "7", "--subset", "1,1"}).code, kExitInputError);
  EXPECT_EQ(run({"design", "--q", "7", "--subset", "1,x"}).code, kExitInputError);
  EXPECT_EQ(run({"design", "--q", "7", "--subset", "3"}).code, kExitInputError);
  EXPECT_EQ(run({"design", "--q", "7", "--subset", "1,2,4", "--format", "csv"}).code,
            kExitInputError);
}

TEST(Cli, DesignJson) {
  const CliRun r = run({"design", "--q", "7", "--subset", "1,2,4", "--format", "json"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(has(r.out, "\"lambda\": 2"));
  EXPECT_TRUE(has(r.out, "\"11001010101000\""));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"table", "--bogus"}).code, kExitInputError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace aglstab
