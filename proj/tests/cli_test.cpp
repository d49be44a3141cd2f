#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "fwh_cli/cli.hpp"
#include "testkit.hpp"

namespace fwh::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return CliRun{code, out.str(), err.str()};
}

std::string corpus(std::string_view stem) { return testkit::corpus_file(stem).string(); }

TEST(Cli, CheckAcceptsCorpus) {
  for (const auto& f : testkit::accepted_corpus()) {
    const CliRun r = run({"check", corpus(f)});
    EXPECT_EQ(r.code, kOk) << f << "\n" << r.err;
  }
}

TEST(Cli, CheckRejectsWithJsonDiagnostics) {
  for (const auto& f : testkit::rejected_corpus()) {
    const CliRun r = run({"check", "--json", corpus(f)});
    EXPECT_EQ(r.code, kStaticError) << f;
    std::istringstream lines(r.out);
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
      const auto j = nlohmann::json::parse(line);
      for (const char* key : {"file", "span", "judgement", "rule", "message"}) EXPECT_TRUE(j.contains(key)) << key;
      EXPECT_EQ(j["judgement"], "admissibility");
      EXPECT_EQ(j["rule"].get<std::string>().rfind("cont-", 0), 0u) << line;
      EXPECT_EQ(j["file"], corpus(f));
      ++count;
    }
    EXPECT_GT(count, 0u) << f;
  }
}

TEST(Cli, TextDiagnosticsNameTheRule) {
  const CliRun r = run({"check", corpus("loopnot")});
  EXPECT_EQ(r.code, kStaticError);
  EXPECT_NE(r.err.find("cont-arr"), std::string::npos) << r.err;
}

TEST(Cli, CheckIsDeterministic) {
  for (const auto& f : {"bf", "hungry"}) {
    const CliRun a = run({"check", "--json", corpus(f)});
    const CliRun b = run({"check", "--json", corpus(f)});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.err, b.err);
  }
}

TEST(Cli, EvalBreadthFirst) {
  const CliRun r = run({"eval", corpus("bf"), "--main", "demo"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.rfind("\\a. \\b. \\c. in (inr <a, in (inr <b, in (inr <c, in (inl unit)>)>)>)", 0), 0u) << r.out;
}

TEST(Cli, EvalOutOfFuel) {
  const CliRun r = run({"eval", corpus("loop"), "--main", "demo", "--unsafe", "--fuel", "2000"});
  EXPECT_EQ(r.code, kOutOfFuel) << r.err;
  const CliRun rejected = run({"eval", corpus("loop"), "--main", "demo"});
  EXPECT_EQ(rejected.code, kStaticError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"check"}).code, kUsage);
  EXPECT_EQ(run({"check", "/nonexistent/file.fwh"}).code, kUsage);
  EXPECT_EQ(run({"eval", corpus("bf"), "--main", "missing"}).code, kUsage);
  EXPECT_EQ(run({"eval", corpus("bf"), "--main", "demo", "--fuel", "zero"}).code, kUsage);
}

TEST(Cli, Explain) {
  const CliRun r = run({"explain", corpus("succpred"), "--def", "shift"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("shift :"), std::string::npos);
  EXPECT_NE(r.out.find("T-"), std::string::npos);
}

TEST(Cli, Lemmas) {
  const CliRun r = run({"lemmas", "--trials", "50", "--json"});
  EXPECT_EQ(r.code, kOk) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(nlohmann::json::parse(line).contains("id")) << line;
    ++count;
  }
  EXPECT_GE(count, 20u);
}

}  // namespace
}  // namespace fwh::cli
