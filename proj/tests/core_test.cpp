#include <gtest/gtest.h>

#include <random>
#include <string>

#include "fucham/fucham.hpp"
#include "support/generators.hpp"

namespace {

using fucham::Degree;
using fucham::DomainError;
using fucham::FuzzyMultiset;
using fucham::FuzzyRelation;
using fucham::FuzzySubset;

Degree d(const char* text) { return Degree::parse(text); }

using Rel = FuzzyRelation<std::string, std::string>;

Rel make_rel(std::set<std::string> left, std::set<std::string> right,
             std::initializer_list<std::tuple<const char*, const char*, const char*>> entries) {
  Rel r(std::move(left), std::move(right));
  for (const auto& [a, b, v] : entries) r.set(a, b, d(v));
  return r;
}

TEST(Degree, ParsesAndPrintsExactly) {
  EXPECT_EQ(d("0.75").micros(), 750000);
  EXPECT_EQ(d("1").micros(), 1000000);
  EXPECT_EQ(d("0.000001").micros(), 1);
  EXPECT_EQ(d("0.5").to_string(), "0.5");
  EXPECT_EQ(d("1").to_string(), "1.0");
  EXPECT_EQ(d("0").to_string(), "0.0");
  EXPECT_EQ(d("0.120000").to_string(), "0.12");
}

TEST(Degree, RejectsBadLiterals) {
  for (const char* bad : {"1.5", "2", "-0.1", ".5", "0.", "0.1234567", "abc", "", "0.5x"}) {
    EXPECT_THROW(d(bad), DomainError) << bad;
  }
  EXPECT_THROW(Degree::from_micros(-1), DomainError);
  EXPECT_THROW(Degree::from_micros(1000001), DomainError);
  EXPECT_FALSE(Degree::try_parse("1.01").has_value());
}

TEST(Degree, ArithmeticStaysOnTheGrid) {
  EXPECT_EQ(d("0.1") + d("0.2"), d("0.3"));
  EXPECT_EQ(d("0.3") - d("0.1"), d("0.2"));
  EXPECT_THROW(d("0.8") + d("0.3"), DomainError);
  EXPECT_THROW(d("0.1") - d("0.3"), DomainError);
  EXPECT_EQ(fucham::signed_diff(d("0.1"), d("0.3")), -200000);
  EXPECT_EQ(fucham::complement(d("0.25")), d("0.75"));
}

TEST(Degree, RandomRoundTripThroughText) {
  gen::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Degree x = gen::any_degree(rng);
    EXPECT_EQ(Degree::parse(x.to_string()), x);
  }
}

TEST(FuzzySubset, ZeroIsAbsence) {
  FuzzySubset<std::string> a{{"x", d("0.4")}};
  EXPECT_EQ(a("x"), d("0.4"));
  EXPECT_EQ(a("y"), Degree::zero());
  a.set("x", Degree::zero());
  EXPECT_TRUE(a.support().empty());
  EXPECT_EQ(a, FuzzySubset<std::string>{});
}

TEST(FuzzyMultiset, SumExamples) {
  using M = FuzzyMultiset<std::string>;
  M left{{{"a", d("0.5")}, 2}};
  M right{{{"a", d("0.5")}, 1}, {{"b", d("0.7")}, 1}};
  M expected{{{"a", d("0.5")}, 3}, {{"b", d("0.7")}, 1}};
  EXPECT_EQ(fucham::msum(left, right), expected);
  EXPECT_EQ(fucham::msum(left, M{}), left);

  const auto split = fucham::msum(M{{{"a", d("0.5")}, 1}}, M{{{"a", d("0.6")}, 1}});
  EXPECT_EQ(split.count("a", d("0.5")), 1u);
  EXPECT_EQ(split.count("a", d("0.6")), 1u);
  EXPECT_EQ(split.size(), 2u);
}

TEST(FuzzyMultiset, RemoveNeverGoesNegative) {
  FuzzyMultiset<std::string> m;
  m.add("a", d("0.5"), 2);
  m.add("a", d("0.5"), 0);
  EXPECT_THROW(m.remove("a", d("0.5"), 3), DomainError);
  m.remove("a", d("0.5"), 2);
  EXPECT_TRUE(m.empty());
  EXPECT_TRUE(m.entries().empty());
  EXPECT_THROW(m.remove("b", d("0.5")), DomainError);
}

TEST(FuzzyMultiset, SumIsCommutativeAssociativeWithIdentity) {
  using M = FuzzyMultiset<std::string>;
  gen::Rng rng(3);
  auto random_multiset = [&] {
    M m;
    for (std::size_t k = gen::below(rng, 5); k > 0; --k)
      m.add(gen::pick(rng, std::vector<std::string>{"a", "b", "c"}), gen::pick(rng, gen::quarters()), 1 + gen::below(rng, 3));
    return m;
  };
  for (int i = 0; i < 300; ++i) {
    const M a = random_multiset(), b = random_multiset(), c = random_multiset();
    EXPECT_EQ(fucham::msum(a, b), fucham::msum(b, a));
    EXPECT_EQ(fucham::msum(fucham::msum(a, b), c), fucham::msum(a, fucham::msum(b, c)));
    EXPECT_EQ(fucham::msum(a, M{}), a);
    EXPECT_EQ(fucham::msum(a, b).size(), a.size() + b.size());
  }
}

TEST(ProcessSimilarity, Examples) {
  EXPECT_EQ(fucham::process_similarity(d("0.6"), d("0.6")), d("1"));
  EXPECT_EQ(fucham::process_similarity(d("1"), d("0")), d("0"));
  EXPECT_EQ(fucham::process_similarity(d("0.75"), d("0.5")), d("0.75"));
}

TEST(ProcessSimilarity, SymmetricAndOneOnlyOnEquality) {
  gen::Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Degree a = gen::any_degree(rng);
    const Degree b = i % 7 == 0 ? a : gen::any_degree(rng);
    EXPECT_EQ(fucham::process_similarity(a, b), fucham::process_similarity(b, a));
    EXPECT_EQ(fucham::process_similarity(a, b) == Degree::one(), a == b);
  }
}

TEST(Relation, Identity) {
  const auto id = fucham::rel_identity<std::string>({"p", "q"});
  EXPECT_EQ(id.graph().size(), 2u);
  EXPECT_EQ(id("p", "p"), Degree::one());
  EXPECT_EQ(id("q", "q"), Degree::one());
  EXPECT_EQ(id("p", "q"), Degree::zero());
  EXPECT_TRUE(fucham::rel_identity<std::string>({}).graph().empty());
  EXPECT_EQ(fucham::rel_identity<std::string>({"p"}).graph().size(), 1u);
}

TEST(Relation, Inverse) {
  const auto r = make_rel({"p"}, {"q"}, {{"p", "q", "0.4"}});
  const auto inv = fucham::rel_inverse(r);
  EXPECT_EQ(inv("q", "p"), d("0.4"));
  EXPECT_EQ(inv.left_domain(), std::set<std::string>{"q"});
  EXPECT_EQ(fucham::rel_inverse(inv), r);
  const auto id = fucham::rel_identity<std::string>({"a", "b"});
  EXPECT_EQ(fucham::rel_inverse(id), id);
}

TEST(Relation, ComposeExample) {
  const auto r1 = make_rel({"p"}, {"q1", "q2"}, {{"p", "q1", "0.7"}, {"p", "q2", "0.4"}});
  const auto r2 = make_rel({"q1", "q2"}, {"r"}, {{"q1", "r", "0.5"}, {"q2", "r", "0.9"}});
  // max(min(0.7,0.5), min(0.4,0.9))
  const auto c = fucham::rel_compose(r1, r2);
  EXPECT_EQ(c("p", "r"), d("0.5"));
  EXPECT_EQ(c.graph().size(), 1u);

  const Rel empty({"q1", "q2"}, {"r"});
  EXPECT_TRUE(fucham::rel_compose(r1, empty).graph().empty());
  EXPECT_THROW(fucham::rel_compose(r1, r1), DomainError);
}

TEST(Relation, UnionExamples) {
  const auto a = make_rel({"p"}, {"q"}, {{"p", "q", "0.3"}});
  const auto b = make_rel({"p"}, {"q"}, {{"p", "q", "0.6"}});
  EXPECT_EQ(fucham::rel_union(a, b)("p", "q"), d("0.6"));
  EXPECT_EQ(fucham::rel_union(a, a), a);
  EXPECT_EQ(fucham::rel_union(a, Rel({"p"}, {"q"})), a);
  EXPECT_THROW(fucham::rel_union(a, Rel({"p"}, {"z"})), DomainError);
}

TEST(Relation, SetOutsideDomainThrows) {
  Rel r({"p"}, {"q"});
  EXPECT_THROW(r.set("x", "q", d("0.5")), DomainError);
}

Rel random_rel(gen::Rng& rng, const std::set<std::string>& l, const std::set<std::string>& r) {
  Rel out(l, r);
  for (const auto& a : l)
    for (const auto& b : r)
      if (gen::coin(rng, 0.5)) out.set(a, b, gen::pick(rng, gen::quarters()));
  return out;
}

// Max-min composition computed straight from its definition.
Rel brute_compose(const Rel& r1, const Rel& r2) {
  Rel out(r1.left_domain(), r2.right_domain());
  for (const auto& a : r1.left_domain())
    for (const auto& c : r2.right_domain()) {
      Degree best = Degree::zero();
      for (const auto& b : r1.right_domain()) best = std::max(best, std::min(r1(a, b), r2(b, c)));
      out.set(a, c, best);
    }
  return out;
}

TEST(Relation, AlgebraicProperties) {
  gen::Rng rng(9);
  const std::set<std::string> A{"a0", "a1", "a2"}, B{"b0", "b1"}, C{"c0", "c1", "c2"};
  for (int i = 0; i < 300; ++i) {
    const Rel r = random_rel(rng, A, B);
    const Rel r2 = random_rel(rng, A, B);
    const Rel s = random_rel(rng, B, C);
    EXPECT_EQ(fucham::rel_compose(fucham::rel_identity(A), r), r);
    EXPECT_EQ(fucham::rel_compose(r, fucham::rel_identity(B)), r);
    EXPECT_EQ(fucham::rel_compose(r, s), brute_compose(r, s));
    EXPECT_EQ(fucham::rel_inverse(fucham::rel_union(r, r2)),
              fucham::rel_union(fucham::rel_inverse(r), fucham::rel_inverse(r2)));
  }
}

fucham::FiniteGroup<std::string> z2() {
  return {{"e", "g"}, {{{"e", "e"}, "e"}, {{"e", "g"}, "g"}, {{"g", "e"}, "g"}, {{"g", "g"}, "e"}}};
}

TEST(Group, DerivesIdentityAndInverses) {
  const auto g = z2();
  EXPECT_EQ(g.identity(), "e");
  EXPECT_EQ(g.inverse("g"), "g");
  EXPECT_EQ(g.op("g", "g"), "e");
}

TEST(Group, RejectsMalformedTables) {
  using Table = fucham::FiniteGroup<std::string>::Table;
  EXPECT_THROW((fucham::FiniteGroup<std::string>({}, {})), DomainError);
  EXPECT_THROW((fucham::FiniteGroup<std::string>({"e", "g"}, Table{{{"e", "e"}, "e"}})), DomainError);
  // Not closed.
  EXPECT_THROW((fucham::FiniteGroup<std::string>(
                   {"e", "g"}, Table{{{"e", "e"}, "e"}, {{"e", "g"}, "g"}, {{"g", "e"}, "g"}, {{"g", "g"}, "h"}})),
               DomainError);
  // Constant table: no identity.
  EXPECT_THROW((fucham::FiniteGroup<std::string>(
                   {"e", "g"}, Table{{{"e", "e"}, "e"}, {{"e", "g"}, "e"}, {{"g", "e"}, "e"}, {{"g", "g"}, "e"}})),
               DomainError);
}

TEST(Group, RosenfeldExamples) {
  const auto g = z2();
  EXPECT_TRUE(fucham::is_fuzzy_subgroup(g, FuzzySubset<std::string>{{"e", d("0.8")}, {"g", d("0.3")}}));
  EXPECT_FALSE(fucham::is_fuzzy_subgroup(g, FuzzySubset<std::string>{{"e", d("0.2")}, {"g", d("0.9")}}));
  EXPECT_THROW(fucham::is_fuzzy_subgroup(g, FuzzySubset<std::string>{{"z", d("0.2")}}), DomainError);
}

TEST(Group, ConstantSubsetsAreSubgroupsOfZ3) {
  using Table = fucham::FiniteGroup<int>::Table;
  Table t;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) t[{a, b}] = (a + b) % 3;
  const fucham::FiniteGroup<int> g({0, 1, 2}, t);
  for (const Degree c : gen::quarters()) {
    FuzzySubset<int> a;
    for (int x = 0; x < 3; ++x) a.set(x, c);
    EXPECT_TRUE(fucham::is_fuzzy_subgroup(g, a));
  }
}

}  // namespace
