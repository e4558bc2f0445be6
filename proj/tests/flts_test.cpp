#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fucham/fucham.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace {

using fucham::CandidateSimulation;
using fucham::Degree;
using fucham::Flts;
using fucham::StateRelation;

Degree d(const char* text) { return Degree::parse(text); }

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FUCHAM_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Flts branch_p() { return fucham::parse_flts(slurp("branch_p.flts")); }
Flts branch_q() { return fucham::parse_flts(slurp("branch_q.flts")); }

Flts one_transition(const std::string& prefix, const char* deg) {
  Flts f;
  f.add_state(prefix + "0");
  f.add_state(prefix + "1");
  f.add_transition(prefix + "0", "a", prefix + "1", d(deg));
  return f;
}

std::set<std::pair<std::string, std::string>> violating(const fucham::CheckReport& r) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& v : r.violations) out.emplace(v.first, v.second);
  return out;
}

TEST(Flts, RejectsUnknownStatesAndDuplicates) {
  Flts f;
  f.add_state("p");
  EXPECT_THROW(f.add_transition("p", "a", "q", d("0.5")), fucham::DomainError);
  f.add_transition("p", "a", "p", d("0.5"));
  EXPECT_THROW(f.add_transition("p", "a", "p", d("0.7")), fucham::DomainError);
  EXPECT_EQ(f.transition_count(), 1u);
  EXPECT_EQ(f.actions(), std::set<std::string>{"a"});
}

TEST(Flts, DerivativeDegree) {
  const Flts p = branch_p();
  const std::vector<fucham::Transition> path{{"p0", "a", "p1", d("0.5")}, {"p1", "b", "p2", d("0.75")}};
  EXPECT_EQ(fucham::derivative_degree(p, path), d("0.5"));
  const std::vector<fucham::Transition> single{{"p1", "c", "p3", d("0.8")}};
  EXPECT_EQ(fucham::derivative_degree(p, single), d("0.8"));

  Flts loop;
  loop.add_state("s");
  loop.add_state("t");
  loop.add_transition("s", "a", "s", d("0.9"));
  loop.add_transition("s", "b", "t", d("0.2"));
  const std::vector<fucham::Transition> three{{"s", "a", "s", d("0.9")}, {"s", "a", "s", d("0.9")}, {"s", "b", "t", d("0.2")}};
  EXPECT_EQ(fucham::derivative_degree(loop, three), d("0.2"));

  const std::vector<fucham::Transition> broken{{"p0", "a", "p1", d("0.5")}, {"p2", "b", "p2", d("0.75")}};
  EXPECT_THROW(fucham::derivative_degree(p, broken), fucham::DomainError);
  const std::vector<fucham::Transition> unknown{{"p0", "a", "p1", d("0.6")}};
  EXPECT_THROW(fucham::derivative_degree(p, unknown), fucham::DomainError);
  EXPECT_THROW(fucham::derivative_degree(p, {}), fucham::DomainError);
}

TEST(FltsIo, ParsesBranchingFiles) {
  const Flts q = branch_q();
  EXPECT_EQ(q.states().size(), 5u);
  EXPECT_TRUE(q.contains({"q0", "a", "q1'", d("0.55")}));
  EXPECT_EQ(fucham::parse_flts(fucham::print_flts(q)).transitions(), q.transitions());
}

TEST(FltsIo, ReportsPositions) {
  try {
    fucham::parse_flts("states: a b\ntrans: a -x@1.5-> b\n");
    FAIL();
  } catch (const fucham::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(fucham::parse_flts("states: a\nbogus: x\n"), fucham::ParseError);
  EXPECT_THROW(fucham::parse_flts("states: a\ntrans: a -x@0.5-> z\n"), fucham::ParseError);
  EXPECT_THROW(fucham::parse_flts("states: a\ntrans: a x@0.5 a\n"), fucham::ParseError);
}

TEST(FltsIo, RelationParsing) {
  const Flts q = branch_q(), p = branch_p();
  const auto rel = fucham::parse_relation(slurp("branch_relation.rel"), q, p);
  EXPECT_EQ(rel("q1'", "p1"), d("0.5"));
  EXPECT_EQ(rel.graph().size(), 5u);
  EXPECT_EQ(fucham::parse_relation(fucham::print_relation(rel), q, p), rel);
  EXPECT_THROW(fucham::parse_relation(slurp("bad_relation.rel"), q, p), fucham::ParseError);
  EXPECT_THROW(fucham::parse_relation("q0 p0 0.4\nq0 p0 0.5\n", q, p), fucham::ParseError);
}

TEST(Simulation, BranchingPairAtThresholds) {
  const Flts q = branch_q(), p = branch_p();
  const auto rel = fucham::parse_relation(slurp("branch_relation.rel"), q, p);
  EXPECT_TRUE(fucham::check_strong_fuzzy_simulation(q, p, {rel, d("0.6")}).holds);

  const auto report = fucham::check_strong_fuzzy_simulation(q, p, {rel, d("0.4")});
  EXPECT_FALSE(report.holds);
  const std::set<std::pair<std::string, std::string>> expected{{"q0", "p0"}, {"q1", "p1"}};
  EXPECT_EQ(violating(report), expected);
  EXPECT_EQ(violating(report), oracle::violating_pairs(oracle::edges(q), oracle::edges(p), oracle::table(rel), 400000));

  EXPECT_FALSE(fucham::check_strong_fuzzy_bisimulation(q, p, {rel, d("0.4")}).holds);
}

TEST(Simulation, ReasonsAreClassified) {
  const Flts q = branch_q(), p = branch_p();
  const auto rel = fucham::parse_relation(slurp("branch_relation.rel"), q, p);
  const auto report = fucham::check_strong_fuzzy_simulation(q, p, {rel, d("0.4")});
  for (const auto& v : report.violations) {
    if (v.first == "q1") {
      EXPECT_EQ(v.reason, fucham::ViolationReason::DegreeTooLow);
    }
  }
  const auto text = fucham::format_report(report);
  EXPECT_NE(text.find("violation: (q1,p1) forward q1 -b@0.8-> q2 degree-too-low"), std::string::npos);
  EXPECT_EQ(text.rfind("fails\n"), text.size() - 6);
}

TEST(Simulation, DomainMismatchThrows) {
  const Flts q = branch_q(), p = branch_p();
  StateRelation wrong(p.states(), q.states());
  EXPECT_THROW(fucham::check_strong_fuzzy_simulation(q, p, {wrong, d("0.5")}), fucham::DomainError);
}

TEST(Simulation, IdentityAlwaysHolds) {
  gen::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const Flts f = gen::flts(rng, "s", 5, gen::quarters());
    const auto id = fucham::rel_identity(f.states());
    for (const Degree s : gen::quarters()) {
      EXPECT_TRUE(fucham::check_strong_fuzzy_simulation(f, f, {id, s}).holds);
      EXPECT_TRUE(fucham::check_strong_fuzzy_bisimulation(f, f, {id, s}).holds);
    }
  }
}

TEST(Bisimulation, VacuousAndFailingExamples) {
  Flts a, b;
  a.add_state("p");
  b.add_state("q");
  StateRelation r(a.states(), b.states());
  r.set("p", "q", d("0.5"));
  EXPECT_TRUE(fucham::check_strong_fuzzy_bisimulation(a, b, {r, d("0.5")}).holds);

  const Flts one = one_transition("s", "0.5");
  EXPECT_TRUE(fucham::check_strong_fuzzy_bisimulation(one, one, {fucham::rel_identity(one.states()), d("1")}).holds);
}

TEST(Simulation, AgreesWithDefinitionOnRandomCandidates) {
  gen::Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const Flts a = gen::flts(rng, "p", 4, gen::quarters());
    const Flts b = gen::flts(rng, "q", 4, gen::quarters());
    const auto rel = gen::relation(rng, a, b, gen::quarters());
    const Degree s = gen::pick(rng, gen::quarters());
    const auto report = fucham::check_strong_fuzzy_simulation(a, b, {rel, s});
    EXPECT_EQ(violating(report), oracle::violating_pairs(oracle::edges(a), oracle::edges(b), oracle::table(rel), s.micros()));
    const auto bis = fucham::check_strong_fuzzy_bisimulation(a, b, {rel, s});
    EXPECT_EQ(bis.holds, oracle::passes_bisim(oracle::edges(a), oracle::edges(b), oracle::table(rel), s.micros()));
  }
}

TEST(GreatestSimulation, Examples) {
  // One state with one a-loop on each side.
  Flts la, lb;
  la.add_state("p");
  la.add_transition("p", "a", "p", d("0.5"));
  lb.add_state("q");
  lb.add_transition("q", "a", "q", d("0.5"));
  EXPECT_EQ(fucham::greatest_simulation(la, lb, d("0.5"))("p", "q"), Degree::one());

  // Two-state chains: only p0 against the stuck q1 falls below s.
  const Flts a = one_transition("p", "0.5"), b = one_transition("q", "0.5");
  const auto g = fucham::greatest_simulation(a, b, d("0.5"));
  EXPECT_EQ(g("p0", "q0"), Degree::one());
  EXPECT_EQ(g("p1", "q0"), Degree::one());
  EXPECT_EQ(g("p1", "q1"), Degree::one());
  EXPECT_EQ(g("p0", "q1"), Degree::zero());

  Flts still;
  still.add_state("t0");
  const auto g2 = fucham::greatest_simulation(a, still, d("0.5"));
  EXPECT_LT(g2("p0", "t0"), d("0.5"));
  EXPECT_EQ(g2("p1", "t0"), Degree::one());

  // First component never moves.
  const auto g3 = fucham::greatest_simulation(still, a, d("0.5"));
  EXPECT_EQ(g3("t0", "p0"), Degree::one());
  EXPECT_EQ(g3("t0", "p1"), Degree::one());
}

TEST(GreatestSimulation, BranchingPairAtHalf) {
  const Flts q = branch_q(), p = branch_p();
  const auto g = fucham::greatest_simulation(q, p, d("0.5"));
  EXPECT_TRUE(fucham::check_strong_fuzzy_simulation(q, p, {g, d("0.5")}).holds);
  // Transition-free q2, q3 are simulated by everything.
  for (const auto& st : p.states()) {
    EXPECT_EQ(g("q2", st), Degree::one());
    EXPECT_EQ(g("q3", st), Degree::one());
  }
  // q1' -c@0.8-> is answered by p1 -c@0.8-> p3.
  EXPECT_EQ(g("q1'", "p1"), Degree::one());
  // q1 -b@0.8-> cannot be answered by p1 -b@0.75->.
  EXPECT_LT(g("q1", "p1"), d("0.5"));
  // q0 -a@0.65-> beats p0's only a-move at 0.5.
  EXPECT_LT(g("q0", "p0"), d("0.5"));
}

TEST(GreatestSimulation, MatchesBruteForceOnHalves) {
  gen::Rng rng(44);
  const std::vector<oracle::Micros> levels{0, 500000, 1000000};
  const std::vector<Degree> grid = gen::halves();
  for (int i = 0; i < 40; ++i) {
    const Flts a = gen::flts(rng, "p", 3, gen::halves());
    const Flts b = gen::flts(rng, "q", 3, gen::halves());
    const Degree s = gen::pick(rng, gen::halves());
    EXPECT_EQ(oracle::table(fucham::greatest_simulation(a, b, s, grid)), oracle::brute_greatest_simulation(a, b, levels, s.micros()));
  }
}

TEST(GreatestSimulation, ResultPassesAndDominatesRandomPassingCandidates) {
  gen::Rng rng(45);
  for (int i = 0; i < 300; ++i) {
    const Flts a = gen::flts(rng, "p", 4, gen::quarters());
    const Flts b = gen::flts(rng, "q", 4, gen::quarters());
    const Degree s = gen::pick(rng, gen::quarters());
    const auto g = fucham::greatest_simulation(a, b, s);
    const auto gb = fucham::greatest_bisimulation(a, b, s);
    EXPECT_TRUE(fucham::check_strong_fuzzy_simulation(a, b, {g, s}).holds);
    EXPECT_TRUE(fucham::check_strong_fuzzy_bisimulation(a, b, {gb, s}).holds);
    const auto cand = gen::relation(rng, a, b, gen::quarters());
    if (!fucham::check_strong_fuzzy_simulation(a, b, {cand, s}).holds) continue;
    for (const auto& [pq, v] : cand.graph()) {
      // Every passing candidate lies below the greatest one on the lattice.
      if (v >= s) {
        EXPECT_GE(g(pq.first, pq.second), v);
      }
    }
  }
}

TEST(Bisimilarity, Examples) {
  const Flts a = one_transition("p", "1");
  EXPECT_TRUE(fucham::bisimilar_at(a, a, "p0", "p0", d("1")));

  Flts still;
  still.add_state("t0");
  EXPECT_FALSE(fucham::bisimilar_at(a, still, "p0", "t0", d("1")));
  EXPECT_TRUE(fucham::bisimilar_at(a, still, "p1", "t0", d("1")));
  EXPECT_THROW(fucham::bisimilar_at(a, still, "zz", "t0", d("1")), fucham::DomainError);
}

TEST(Bisimilarity, MonotoneInDegree) {
  gen::Rng rng(46);
  for (int i = 0; i < 100; ++i) {
    const Flts a = gen::flts(rng, "p", 3, gen::quarters());
    const Flts b = gen::flts(rng, "q", 3, gen::quarters());
    for (const auto& p : a.states())
      for (const auto& q : b.states()) {
        bool before = false;
        for (const Degree x : gen::quarters()) {
          const bool now = fucham::bisimilar_at(a, b, p, q, x);
          EXPECT_TRUE(!before || now);
          before = now;
        }
      }
  }
}

TEST(XMachine, LeftMultiplicationInverse) {
  EXPECT_EQ(fucham::left_mult_inverse("ab", "abc"), "c");
  EXPECT_EQ(fucham::left_mult_inverse("", "w"), "w");
  EXPECT_FALSE(fucham::left_mult_inverse("b", "abc").has_value());
}

TEST(XMachine, RelabelsEdges) {
  Flts f;
  f.add_state("p");
  f.add_state("q");
  f.add_transition("p", "a", "q", d("0.5"));
  const fucham::FuzzyAutomaton aut(f, {"p"}, {"q"});
  const auto m = fucham::to_fuzzy_x_machine(aut);
  ASSERT_EQ(m.edges.size(), 1u);
  EXPECT_EQ(m.edges[0], (fucham::XEdge{"p", fucham::LeftInverse{"a"}, "q", d("0.5")}));
  EXPECT_EQ(m.edges[0].label("abc"), "bc");
  EXPECT_EQ(m.type.size(), 1u);

  const auto empty = fucham::to_fuzzy_x_machine(fucham::FuzzyAutomaton{});
  EXPECT_TRUE(empty.edges.empty());
  EXPECT_TRUE(empty.states.empty());
  EXPECT_THROW(fucham::FuzzyAutomaton(f, {"zz"}, {}), fucham::DomainError);
}

}  // namespace
