#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = jumpkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Writes a spec file under the test temp directory and returns its path.
std::string write_spec(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(testing::TempDir()) / name;
  std::ofstream(path) << text;
  return path.string();
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }
  ScopedEnv(const ScopedEnv&) = delete;
  ScopedEnv& operator=(const ScopedEnv&) = delete;

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, JumpsOfInducedTorus) {
  const Outcome o = run({"jumps", "--torus", "res:4"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "0, 1/4, 1/2, 3/4\n");
  EXPECT_EQ(o.err, "");
}

TEST(Cli, ZetaOfQuadraticTorus) {
  const Outcome o = run({"zeta-torus", "--n", "2", "--p", "2"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "((L-1)*L*z)/(1 - L^1*z^2)\n");
}

TEST(Cli, JumpsOfSplitTorus) {
  const Outcome o = run({"jumps", "--torus", "gm"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "0\n");
}

TEST(Cli, TorusQueries) {
  EXPECT_EQ(run({"d-jumps", "--torus", "res:3", "--d", "7"}).out, "0, 2, 4\n");
  EXPECT_EQ(run({"d-jumps", "--torus", "res:3", "--d", "5"}).out, "0, 1, 3\n");
  EXPECT_EQ(run({"order", "--torus", "res:3", "--d", "7"}).out, "6\n");
  EXPECT_EQ(run({"characters", "--torus", "res:3", "--d", "7"}).out, "0, 2, 4 mod 7\n");
  EXPECT_EQ(run({"conductor", "--torus", "res:5"}).out, "2\n");
  EXPECT_EQ(run({"conductor", "--jumps", "0, 1/4"}).out, "1/4\n");
  EXPECT_EQ(run({"jumps", "--torus", "gm*norm1quad^3"}).out, "0, 1/2, 1/2, 1/2\n");
}

TEST(Cli, SeriesAndPole) {
  const Outcome o = run({"zeta-torus", "--n", "2", "--p", "2", "--series", "3"});
  EXPECT_EQ(o.out, "((L-1)*L*z)/(1 - L^1*z^2)\nz^1: -L + L^2\nz^3: -L^2 + L^3\n");
  EXPECT_EQ(run({"pole", "--n", "4", "--p", "2"}).out, "s=3/2 order=1\n");
  EXPECT_EQ(run({"pole", "--zeta", "(2*(L-1)*L*z*(1 + L*z^2))/(1 - L^1*z^2)^2"}).out, "s=1/2 order=2\n");
}

TEST(Cli, OracleCokernel) {
  EXPECT_EQ(run({"oracle-cokernel", "--n", "3", "--d", "7"}).out, "0, 2, 4\n");
  EXPECT_EQ(run({"oracle-cokernel", "--poly", "t^3 - pi", "--d", "7", "--p", "3"}).out, "0, 2, 4\n");
  EXPECT_EQ(run({"oracle-cokernel", "--n", "3", "--d", "7", "--basis-change", "1 1 0; 0 1 0; 0 0 1"}).out, "0, 2, 4\n");
}

TEST(Cli, IsogenyCommands) {
  EXPECT_EQ(run({"isogeny", "--demo"}).out, "isogeny=true cokernel_order=16\n");
  EXPECT_EQ(run({"isogeny", "--non-invariance"}).out,
            "left: 0, 1/4, 1/2, 3/4\nright: 0, 1/2, 1/2, 1/2\nisogeny=true cokernel_order=16\ndiffer=true\n");
  const std::string path = write_spec("identity.spec",
                                      "[group]\nfactors = 3\n[lattice source]\nregular = true\n"
                                      "[lattice target]\nregular = true\n[map]\nmatrix = 2 0 0; 0 2 0; 0 0 2\n");
  EXPECT_EQ(run({"isogeny", "--spec", path}).out, "isogeny=true cokernel_order=8\n");
}

TEST(Cli, PushoutChecks) {
  EXPECT_EQ(run({"pushout", "--check", "membership", "--kind", "two-points", "--f", "t^2 - t"}).out, "true\n");
  EXPECT_EQ(run({"pushout", "--check", "membership", "--kind", "two-points", "--f", "t - 1"}).out, "false\n");
  EXPECT_EQ(run({"pushout", "--check", "nilpotent", "--kind", "two-points"}).out,
            "member=true not_in_pi=true square_in_pi=true\n");
  EXPECT_EQ(run({"pushout", "--check", "nilpotent", "--kind", "two-points", "--f", "0"}).out,
            "member=true not_in_pi=false square_in_pi=n/a\n");
  EXPECT_EQ(run({"pushout", "--check", "tor-defect", "--kind", "two-points"}).out, "1\n");
  EXPECT_EQ(run({"pushout", "--check", "base-change", "--kind", "two-points", "--target", "k"}).out,
            "commutes=false defect=1\n");
  EXPECT_EQ(run({"pushout", "--check", "base-change", "--kind", "wild-point", "--target", "k"}).out,
            "commutes=true defect=0\n");
  EXPECT_EQ(run({"pushout", "--check", "generators", "--kind", "wild-point", "--poly", "t^3 - pi", "--p", "3"}).out,
            "true\n");
  const std::string path = write_spec("wild.spec", "[gluing]\nkind = wild-point\np = 2\npoly = t^2 - pi\n");
  EXPECT_EQ(run({"pushout", "--check", "tor-defect", "--spec", path}).out, "0\n");
}

TEST(Cli, JacobianSpecFile) {
  const std::string path = write_spec("jacobian.spec",
                                      "[jacobian]\nn = 2\np = 2\ne_tilde = 1\nabelian_jumps = 0\n"
                                      "[divisor 1]\ntoric_rank = 1\nphi_tilde = 1\nab_class = 1\n");
  EXPECT_EQ(run({"zeta-jacobian", "--spec", path}).out, "(2*(L-1)*L*z*(1 + L*z^2))/(1 - L^1*z^2)^2\n");
  EXPECT_EQ(run({"pole", "--spec", path}).out, "s=1/2 order=2\n");
  EXPECT_EQ(run({"components", "--spec", path, "--alpha", "1"}).out, "2\n");
  EXPECT_EQ(run({"conductor", "--jacobian", path}).out, "1/2\n");
}

TEST(Cli, DomainErrorsExitOne) {
  const Outcome o = run({"zeta-torus", "--n", "6", "--p", "2"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.out, "");
  EXPECT_EQ(o.err.rfind("NotPurelyWild: ", 0), 0u) << o.err;

  const Outcome bad_torus = run({"jumps", "--torus", "foo:3"});
  EXPECT_EQ(bad_torus.code, 1);
  EXPECT_EQ(bad_torus.err.rfind("ParseError: ", 0), 0u) << bad_torus.err;

  const Outcome congruence = run({"oracle-cokernel", "--n", "3", "--d", "5"});
  EXPECT_EQ(congruence.code, 1);
  EXPECT_EQ(congruence.err.rfind("CongruenceViolation: ", 0), 0u) << congruence.err;

  const Outcome degree = run({"--degree-bound", "3", "pushout", "--check", "membership", "--kind", "two-points", "--f", "t^4"});
  EXPECT_EQ(degree.code, 1);
  EXPECT_EQ(degree.err.rfind("DegreeBound: ", 0), 0u) << degree.err;
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{}, {"bogus"}, {"jumps"}, {"d-jumps", "--torus", "gm"}, {"jumps", "--torus", "gm", "--spec", "x"},
        {"zeta-torus", "--n", "two", "--p", "2"}}) {
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 2) << (args.empty() ? "(no args)" : args.front());
    EXPECT_EQ(o.out, "");
    EXPECT_FALSE(o.err.empty());
  }
}

TEST(Cli, DeterministicAcrossRuns) {
  const std::vector<std::vector<std::string>> commands{
      {"zeta-torus", "--n", "9", "--p", "3", "--series", "12"},
      {"oracle-cokernel", "--n", "4", "--d", "9"},
      {"pushout", "--check", "base-change", "--kind", "wild-point", "--target", "5", "--p", "2"}};
  for (const auto& args : commands) {
    const Outcome first = run(args);
    EXPECT_EQ(first.code, 0) << first.err;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(run(args).out, first.out);
  }
}

TEST(Cli, EnvironmentOverrides) {
  {
    ScopedEnv env("JUMPKIT_DEGREE_BOUND", "3");
    EXPECT_EQ(run({"pushout", "--check", "membership", "--kind", "two-points", "--f", "t^4"}).code, 1);
    // the flag wins over the environment
    EXPECT_EQ(run({"--degree-bound", "6", "pushout", "--check", "membership", "--kind", "two-points", "--f", "t^4"}).code, 0);
  }
  {
    ScopedEnv env("JUMPKIT_PRECISION", "4");
    const Outcome o = run({"oracle-cokernel", "--n", "3", "--d", "7"});
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.err.rfind("PrecisionExhausted: ", 0), 0u) << o.err;
  }
  {
    ScopedEnv env("JUMPKIT_PRECISION", "lots");
    EXPECT_EQ(run({"jumps", "--torus", "gm"}).code, 2);
  }
}

TEST(Cli, BinaryExitCodes) {
  const std::string cli = JUMPKIT_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("jumps --torus res:4"), 0);
  EXPECT_EQ(status("zeta-torus --n 6 --p 2"), 1);
  EXPECT_EQ(status("no-such-command"), 2);
}
