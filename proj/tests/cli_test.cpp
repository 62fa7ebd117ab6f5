#include "gausstv/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace gausstv {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "gausstv");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli_main(args, in, out, err);
  return CliRun{code, out.str(), err.str()};
}

const std::string kShift = R"({"mu1": [2], "sigma1": [[1]], "mu2": [0], "sigma2": [[1]]})";

TEST(Cli, ComputeFromStdin) {
  const CliRun r = run({"compute", "--input", "-", "--eps", "0.01"}, kShift);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("{\"tv_estimate\":0.68", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\"eps\":0.01}"), std::string::npos) << r.out;
}

TEST(Cli, RationalEpsAndDeterminism) {
  const CliRun a = run({"compute", "--input", "-", "--eps", "1/100"}, kShift);
  const CliRun b = run({"compute", "--input", "-", "--eps", "0.01"}, kShift);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DiagnosticsAndPlainFormat) {
  const CliRun r = run({"compute", "--input", "-", "--eps", "0.1", "--diagnostics", "--format", "plain"}, kShift);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("tv_estimate 0.68"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("diagnostics.rank_case full_rank"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("diagnostics.budget_split 0.1 0.05"), std::string::npos) << r.out;
}

TEST(Cli, Disprod) {
  const CliRun r = run({"disprod", "--input", "-", "--eps", "0.05"},
                    R"({"pairs": [{"p": [0.6, 0.4], "q": [0.5, 0.5]}, {"p": [0.6, 0.4], "q": [0.5, 0.5]}]})");
  ASSERT_EQ(r.code, 0) << r.err;
  const double v = std::stod(r.out.substr(r.out.find(':') + 1));
  EXPECT_NEAR(v, 0.11, 0.05 * 0.11);
}

TEST(Cli, OracleMethods) {
  CliRun r = run({"oracle", "--method", "quad1d", "--input", "-"}, kShift);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"tv\":0.68268949213"), std::string::npos) << r.out;
  r = run({"oracle", "--method", "erf", "--x", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.8427007929497148693"), std::string::npos) << r.out;
  r = run({"oracle", "--method", "mc", "--input", "-", "--samples", "1000", "--seed", "5"}, kShift);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, run({"oracle", "--method", "mc", "--input", "-", "--samples", "1000", "--seed", "5"}, kShift).out);
  r = run({"oracle", "--method", "grid", "--input", "-", "--cells", "64"}, kShift);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"oracle", "--method", "nope"}).code, kExitInvalidInput);
}

TEST(Cli, MalformedJsonIsLineAnchored) {
  const CliRun r = run({"compute", "--input", "-", "--eps", "0.1"}, "{\n  \"mu1\": [1,\n  oops]\n}");
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("<stdin>:3:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos) << r.err;
}

TEST(Cli, InvalidInputs) {
  EXPECT_EQ(run({"compute", "--input", "/nonexistent/file.json", "--eps", "0.1"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"compute", "--input", "-", "--eps", "2"}, kShift).code, kExitInvalidInput);
  EXPECT_EQ(run({"compute", "--input", "-", "--eps", "1/0"}, kShift).code, kExitInvalidInput);
  EXPECT_EQ(run({"compute", "--input", "-", "--eps", "abc"}, kShift).code, kExitInvalidInput);
  EXPECT_EQ(run({"compute", "--input", "-", "--eps", "0.1"}, R"({"mu1": [0]})").code, kExitInvalidInput);
  EXPECT_EQ(run({"compute", "--input", "-", "--eps", "0.1"},
                R"({"mu1": [0], "sigma1": [[-1]], "mu2": [0], "sigma2": [[1]]})")
                .code,
            kExitInvalidInput);
  EXPECT_EQ(run({"disprod", "--input", "-", "--eps", "0.1"}, R"({"pairs": [{"p": [0.5], "q": [1]}]})").code,
            kExitInvalidInput);
  EXPECT_EQ(run({}).code, kExitInvalidInput);
}

TEST(Cli, NumericalFailureExitCode) {
  const CliRun r = run({"compute", "--input", "-", "--eps", "0.1"},
                    R"({"mu1": [1e-24], "sigma1": [[1]], "mu2": [0], "sigma2": [[1]]})");
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("discretize"), std::string::npos) << r.err;
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run({"--help"}).code, 0); }

}  // namespace
}  // namespace gausstv
