#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "fucham/fucham.hpp"

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded away; returns exit status and stdout.
Outcome cli(const std::string& args) {
  const std::string cmd = std::string(FUCHAM_CLI) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string data(const char* name) { return std::string(FUCHAM_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(CliRun, WaterMachine) {
  const auto r = cli("run " + data("water.machine"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{ H2O@0.75 * 2 }\n");
}

TEST(CliRun, BadDegreeIsUsageError) {
  EXPECT_EQ(cli("run " + data("bad_degree.machine")).code, 2);
  EXPECT_EQ(cli("run /nonexistent.machine").code, 2);
  EXPECT_EQ(cli("run").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("run " + data("water.machine") + " --strategy sideways").code, 2);
}

TEST(CliRun, ZeroStepsPrintsInit) {
  const auto r = cli("run --max-steps 0 " + data("water.machine"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{ H2@0.75, H2@0.9, O2@0.8 }\n");
}

TEST(CliRun, OutputIsReproducibleAndReparses) {
  const std::string args = "run --trace --strategy random --seed 7 " + data("membranes.machine");
  const auto a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto ls = lines(a.out);
  ASSERT_FALSE(ls.empty());
  EXPECT_NO_THROW(fucham::parse_solution(ls.back()));
}

// Rebuilds the final solution from the printed trace deltas.
TEST(CliRun, TraceReplaysToFinalSolution) {
  const std::string file = data("membranes.machine");
  const auto r = cli("run --trace " + file);
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  std::ifstream in(file);
  std::stringstream text;
  text << in.rdbuf();
  fucham::Solution s = fucham::parse_machine(text.str()).init;
  auto list = [](const std::string& line, const std::string& from, const std::string& to) {
    const auto a = line.find(from) + from.size();
    const auto b = to.empty() ? line.size() : line.find(to);
    std::string inner = line.substr(a, b - a);
    return fucham::parse_solution("{" + inner.substr(1, inner.size() - 2) + "}");
  };
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    ASSERT_EQ(ls[i].rfind("step ", 0), 0u);
    s.remove(list(ls[i], " consumed=", " produced="));
    s.add(list(ls[i], " produced=", ""));
  }
  EXPECT_EQ(fucham::to_string(s), ls.back());
}

TEST(CliCheckSim, BranchingPair) {
  const std::string files = data("branch_q.flts") + " " + data("branch_p.flts") + " " + data("branch_relation.rel");
  const auto ok = cli("check-sim " + files + " --threshold 0.6");
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("holds"), std::string::npos);

  const auto bad = cli("check-sim " + files + " --threshold 0.4");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("(q0,p0)"), std::string::npos);
  EXPECT_NE(bad.out.find("(q1,p1)"), std::string::npos);
  EXPECT_EQ(bad.out.find("(q1',p1)"), std::string::npos);

  EXPECT_EQ(cli("check-sim " + files + " --threshold 0.4 --bisim").code, 1);
  EXPECT_EQ(cli("check-sim " + files).code, 2);
  EXPECT_EQ(cli("check-sim " + files + " --threshold 1.5").code, 2);
}

TEST(CliCheckSim, UnknownStateInRelation) {
  const auto r = cli("check-sim " + data("branch_q.flts") + " " + data("branch_p.flts") + " " + data("bad_relation.rel") +
                     " --threshold 0.5");
  EXPECT_EQ(r.code, 2);
}

TEST(CliGreatestSim, Examples) {
  const auto empty = cli("greatest-sim " + data("empty_a.flts") + " " + data("empty_b.flts") + " --threshold 0.5");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "s0 t0 1.0\ns1 t0 1.0\n");

  const auto branch = cli("greatest-sim " + data("branch_q.flts") + " " + data("branch_p.flts") + " --threshold 0.5");
  EXPECT_EQ(branch.code, 0);
  EXPECT_NE(branch.out.find("q1' p1 1.0"), std::string::npos);
  EXPECT_EQ(cli("greatest-sim " + data("branch_q.flts") + " " + data("bad.pi") + " --threshold 0.5").code, 2);
}

TEST(CliPi, Handshake) {
  const auto ok = cli("pi run --lambda 0.7 " + data("handshake.pi"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "{ }\n");

  const auto stuck = cli("pi run --lambda 0.95 " + data("handshake.pi"));
  EXPECT_EQ(stuck.code, 0);
  EXPECT_NE(stuck.out.find("# x@0.9(y@0.8).0"), std::string::npos);
  EXPECT_NE(stuck.out.find("# x@0.9<z@0.85>.0"), std::string::npos);

  const auto cut = cli("pi run --lambda 0.7 --max-steps 1 " + data("handshake.pi"));
  EXPECT_EQ(cut.code, 1);
  EXPECT_EQ(cli("pi run " + data("handshake.pi")).code, 2);
}

TEST(CliPi, ParseAndErrors) {
  const auto p = cli("pi parse " + data("scope.pi"));
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(fucham::pi::parse(p.out), fucham::pi::parse("(new a (c<a>.a(u).0)) | c(v).v<v>.0"));
  EXPECT_EQ(cli("pi parse " + data("bad.pi")).code, 2);
  EXPECT_EQ(cli("pi run --lambda 0.5 " + data("bad.pi")).code, 2);
  EXPECT_EQ(cli("pi").code, 2);
}

TEST(CliPi, TraceIsReproducible) {
  const std::string args = "pi run --trace --lambda 0.5 --seed 3 " + data("scope.pi");
  const auto a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("step 1: "), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(cli("--help").code, 0); }

}  // namespace
