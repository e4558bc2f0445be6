// fucham: batch driver for machines, fuzzy transition systems and pi programs.
//
// Exit status: 0 success, 1 check failed or pi run cut off by --max-steps,
// 2 usage, parse or validation error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fucham/fucham.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fucham::Error("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Parse errors carry positions; prefix them with the file they came from.
template <typename Fn>
auto parse_file(const std::string& path, Fn&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const fucham::ParseError& e) {
    throw fucham::ParseError(path + ":" + e.what());
  }
}

fucham::Degree degree_option(const std::string& text, const char* flag) {
  try {
    return fucham::Degree::parse(text);
  } catch (const fucham::DomainError& e) {
    throw fucham::DomainError(std::string(flag) + ": " + e.what());
  }
}

struct RunArgs {
  std::string file;
  std::size_t max_steps = 1000;
  std::uint64_t seed = 0;
  bool trace = false;
  std::string strategy;
};

int cmd_run(const RunArgs& args) {
  auto machine = parse_file(args.file, [](const std::string& t) { return fucham::parse_machine(t); });
  if (args.strategy == "max") machine.def.options().strategy = fucham::Strategy::Max;
  if (args.strategy == "random") machine.def.options().strategy = fucham::Strategy::Random;
  const auto result = fucham::run(machine.def, machine.init, args.max_steps, args.seed);
  if (args.trace) {
    for (const auto& t : result.trace) std::cout << fucham::format_trace_step(t) << '\n';
  }
  std::cout << fucham::to_string(result.final) << '\n';
  return kOk;
}

struct SimArgs {
  std::string a;
  std::string b;
  std::string relation;
  std::string threshold;
  bool bisim = false;
};

int cmd_check_sim(const SimArgs& args) {
  const auto s = degree_option(args.threshold, "--threshold");
  const auto a = parse_file(args.a, [](const std::string& t) { return fucham::parse_flts(t); });
  const auto b = parse_file(args.b, [](const std::string& t) { return fucham::parse_flts(t); });
  const auto rel = parse_file(args.relation, [&](const std::string& t) { return fucham::parse_relation(t, a, b); });
  const fucham::CandidateSimulation cand{rel, s};
  const auto report = args.bisim ? fucham::check_strong_fuzzy_bisimulation(a, b, cand)
                                 : fucham::check_strong_fuzzy_simulation(a, b, cand);
  std::cout << fucham::format_report(report);
  return report.holds ? kOk : kFailed;
}

int cmd_greatest_sim(const SimArgs& args) {
  const auto s = degree_option(args.threshold, "--threshold");
  const auto a = parse_file(args.a, [](const std::string& t) { return fucham::parse_flts(t); });
  const auto b = parse_file(args.b, [](const std::string& t) { return fucham::parse_flts(t); });
  const auto rel = args.bisim ? fucham::greatest_bisimulation(a, b, s) : fucham::greatest_simulation(a, b, s);
  std::cout << fucham::print_relation(rel);
  return kOk;
}

struct PiArgs {
  std::string file;
  std::string lambda;
  std::size_t max_steps = 1000;
  std::uint64_t seed = 0;
  bool trace = false;
};

int cmd_pi_run(const PiArgs& args) {
  const auto lambda = degree_option(args.lambda, "--lambda");
  const auto p = parse_file(args.file, [](const std::string& t) { return fucham::pi::parse(t); });
  const auto result = fucham::pi::pi_run(p, lambda, args.max_steps, args.seed);
  if (args.trace) {
    for (const auto& t : result.trace) std::cout << fucham::pi::format_pi_trace_step(t) << '\n';
  }
  std::cout << fucham::pi::format_pi_solution(result.final);
  return result.stopped_by_budget ? kFailed : kOk;
}

int cmd_pi_parse(const PiArgs& args) {
  const auto p = parse_file(args.file, [](const std::string& t) { return fucham::pi::parse(t); });
  std::cout << fucham::pi::to_string(p) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy chemical abstract machine workbench"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a machine file and print the final solution");
  run->add_option("machine", run_args.file, "Machine file")->required();
  run->add_option("--max-steps", run_args.max_steps, "Step budget")->capture_default_str();
  run->add_option("--seed", run_args.seed, "Random seed")->capture_default_str();
  run->add_flag("--trace", run_args.trace, "Print one line per step");
  run->add_option("--strategy", run_args.strategy, "Override the file's strategy")
      ->check(CLI::IsMember({"max", "random"}));

  SimArgs check_args;
  auto* check = app.add_subcommand("check-sim", "Check a candidate strong fuzzy (bi)simulation");
  check->add_option("first", check_args.a, "First system")->required();
  check->add_option("second", check_args.b, "Second system")->required();
  check->add_option("relation", check_args.relation, "Candidate relation")->required();
  check->add_option("--threshold", check_args.threshold, "Simulation degree s")->required();
  check->add_flag("--bisim", check_args.bisim, "Check the bisimulation condition");

  SimArgs greatest_args;
  auto* greatest = app.add_subcommand("greatest-sim", "Print the greatest strong fuzzy (bi)simulation");
  greatest->add_option("first", greatest_args.a, "First system")->required();
  greatest->add_option("second", greatest_args.b, "Second system")->required();
  greatest->add_option("--threshold", greatest_args.threshold, "Simulation degree s")->required();
  greatest->add_flag("--bisim", greatest_args.bisim, "Use the bisimulation condition");

  PiArgs pi_args;
  auto* pi = app.add_subcommand("pi", "Fuzzy pi-calculus programs");
  pi->require_subcommand(1);
  auto* pi_run = pi->add_subcommand("run", "Reduce a program at threshold lambda");
  pi_run->add_option("program", pi_args.file, "Program file")->required();
  pi_run->add_option("--lambda", pi_args.lambda, "Feasibility threshold")->required();
  pi_run->add_option("--max-steps", pi_args.max_steps, "Step budget")->capture_default_str();
  pi_run->add_option("--seed", pi_args.seed, "Random seed")->capture_default_str();
  pi_run->add_flag("--trace", pi_args.trace, "Print one line per step");
  auto* pi_parse = pi->add_subcommand("parse", "Parse and pretty-print a program");
  pi_parse->add_option("program", pi_args.file, "Program file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*check) return cmd_check_sim(check_args);
    if (*greatest) return cmd_greatest_sim(greatest_args);
    if (*pi_run) return cmd_pi_run(pi_args);
    if (*pi_parse) return cmd_pi_parse(pi_args);
  } catch (const fucham::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
