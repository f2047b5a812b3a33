#include <map>

#include <gtest/gtest.h>

#include "belief/error.hpp"
#include "belief/prop.hpp"
#include "fixtures.hpp"

using namespace belief;
using belief::fixtures::worlds;

namespace {

// Truth of a formula under an assignment by name, straight from the
// connective tables.
bool truth(const Formula& g, const std::map<std::string, bool>& a) {
  switch (g.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return a.at(g.atom().str());
    case Op::Not: return !truth(g.left(), a);
    case Op::And: return truth(g.left(), a) && truth(g.right(), a);
    case Op::Or: return truth(g.left(), a) || truth(g.right(), a);
    case Op::Implies: return !truth(g.left(), a) || truth(g.right(), a);
    case Op::Iff: return truth(g.left(), a) == truth(g.right(), a);
  }
  return false;
}

std::map<std::string, bool> assignment(const Vocabulary& v, World w) {
  std::map<std::string, bool> a;
  for (std::size_t i = 0; i < v.atom_count(); ++i) a[v.atom_at(i).str()] = v.value(w, i);
  return a;
}

}  // namespace

TEST(Parse, BuildsExpectedTrees) {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  EXPECT_EQ(parse_formula("p & !q"), p & !q);
  EXPECT_EQ(parse_formula("true -> p"), implies(Formula::truth(), p));
  EXPECT_EQ(parse_formula("p@2 & q@2"), Formula::atom("p", 2) & Formula::atom("q", 2));
  EXPECT_EQ(parse_formula("p -> q -> p"), implies(p, implies(q, p)));
  EXPECT_EQ(parse_formula("p | q & p"), p | (q & p));
  EXPECT_EQ(parse_formula("p <-> q | !p"), iff(p, q | !p));
  EXPECT_EQ(parse_formula("(p | q) & p"), (p | q) & p);
}

TEST(Parse, ReportsErrors) {
  EXPECT_THROW(parse_formula("p &"), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  Vocabulary v({"p"});
  try {
    parse_formula("p & r", v);
    FAIL() << "unknown atom accepted";
  } catch (const UnknownAtomError& e) {
    EXPECT_EQ(e.atom(), "r");
  }
  EXPECT_THROW(parse_formula("p & & q"), ParseError);
}

TEST(Parse, PrinterRoundTripsGeneratedFormulas) {
  Vocabulary v({"p", "q"});
  for (const auto& g : formulas_up_to_depth(v, 2)) ASSERT_EQ(parse_formula(g.str()), g) << g.str();
  Formula stamped = timestamp(parse_formula("!(p -> q) <-> p"), 3);
  EXPECT_EQ(parse_formula(stamped.str()), stamped);
}

TEST(Vocabulary, EnumeratesWorldsInBitOrder) {
  Vocabulary one({"p"});
  auto w1 = enumerate_worlds(one);
  ASSERT_EQ(w1.size(), 2u);
  EXPECT_FALSE(one.value(w1[0], 0));
  EXPECT_TRUE(one.value(w1[1], 0));
  EXPECT_EQ(enumerate_worlds(Vocabulary({"p", "q"})).size(), 4u);
  Vocabulary three({"p", "q", "r"});
  auto w3 = enumerate_worlds(three);
  ASSERT_EQ(w3.size(), 8u);
  for (std::size_t i = 0; i < w3.size(); ++i) {
    EXPECT_EQ(w3[i].index, i);
    EXPECT_EQ(three.parse_world(three.world_name(w3[i])), w3[i]);
  }
  EXPECT_EQ(three.world_name(World{4}), "100");
}

TEST(Vocabulary, RejectsBadNames) {
  EXPECT_THROW(Vocabulary(std::vector<std::string>{}), PreconditionError);
  EXPECT_THROW(Vocabulary({"p", "p"}), PreconditionError);
  EXPECT_THROW(Vocabulary({"1p"}), PreconditionError);
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("a" + std::to_string(i));
  EXPECT_THROW(Vocabulary{many}, PreconditionError);
  EXPECT_THROW(Vocabulary::timestamped({"p", "q", "r", "s"}, 4), PreconditionError);
}

TEST(Vocabulary, TimestampedLayoutIsTimeMajor) {
  Vocabulary v = Vocabulary::timestamped({"p", "q"}, 2);
  EXPECT_EQ(v.atom_count(), 6u);
  EXPECT_EQ(v.position(Atom{"p", 0}), 0u);
  EXPECT_EQ(v.position(Atom{"q", 0}), 1u);
  EXPECT_EQ(v.position(Atom{"p", 1}), 2u);
  EXPECT_EQ(v.position(Atom{"q", 2}), 5u);
  EXPECT_FALSE(v.position(Atom{"p", 3}));
  EXPECT_FALSE(v.position(Atom{"p", std::nullopt}));
}

TEST(Extension, Examples) {
  Vocabulary v({"p", "q"});
  EXPECT_EQ(extension(Formula::truth(), v), Extension::all(4));
  EXPECT_TRUE(extension(parse_formula("p & !p"), v).empty());
  EXPECT_EQ(extension(parse_formula("p -> q"), v), worlds(v, {"00", "01", "11"}));
  EXPECT_THROW(extension(parse_formula("r"), v), UnknownAtomError);
}

TEST(Extension, MatchesTruthTableOnGeneratedFormulas) {
  Vocabulary v({"p", "q"});
  auto all = formulas_up_to_depth(v, 2);
  for (const auto& g : all) {
    Extension e = extension(g, v);
    for (World w : enumerate_worlds(v)) {
      ASSERT_EQ(e.contains(w), truth(g, assignment(v, w))) << g.str();
      ASSERT_EQ(evaluate(g, v, w), e.contains(w));
    }
  }
}

TEST(Extension, ConnectivesAreSetOperations) {
  // Formula trees three levels high over two atoms.
  Vocabulary v({"p", "q"});
  auto all = formulas_up_to_depth(v, 2);
  std::vector<Extension> ext;
  for (const auto& g : all) ext.push_back(extension(g, v));
  for (std::size_t i = 0; i < all.size(); i += 37) {
    ASSERT_EQ(extension(!all[i], v), ~ext[i]);
    for (std::size_t j = 0; j < all.size(); j += 41) {
      ASSERT_EQ(extension(all[i] & all[j], v), ext[i] & ext[j]);
      ASSERT_EQ(extension(all[i] | all[j], v), ext[i] | ext[j]);
    }
  }
}

TEST(Entails, Examples) {
  Vocabulary v({"p", "q"});
  EXPECT_TRUE(entails(Extension(4), Formula::falsity(), v));
  EXPECT_TRUE(entails(Extension::all(4), parse_formula("p | !p"), v));
  EXPECT_TRUE(entails(extension(parse_formula("p & q"), v), parse_formula("p"), v));
  EXPECT_FALSE(entails(extension(parse_formula("p"), v), parse_formula("q"), v));
}

TEST(Entails, IsMonotoneInTheBeliefSet) {
  Vocabulary v({"p", "q"});
  auto subsets = all_subsets(Extension::all(4));
  auto formulas = formulas_up_to_depth(v, 1);
  for (const auto& big : subsets)
    for (const auto& small : subsets) {
      if (!small.subset_of(big)) continue;
      for (const auto& g : formulas)
        if (entails(big, g, v)) ASSERT_TRUE(entails(small, g, v));
    }
}

TEST(FormulaOfExtension, RoundTripsEverySubset) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> props;
    for (std::size_t i = 0; i < n; ++i) props.push_back(std::string(1, static_cast<char>('p' + i)));
    Vocabulary v(props);
    for (const auto& e : all_subsets(Extension::all(v.world_count()))) {
      ASSERT_EQ(extension(formula_of_extension(e, v), v), e);
      Formula alt = alternate_formula_of_extension(e, v);
      ASSERT_EQ(extension(alt, v), e);
    }
  }
  Vocabulary v({"p", "q"});
  EXPECT_EQ(formula_of_extension(Extension(4), v), Formula::falsity());
  EXPECT_EQ(formula_of_extension(Extension::all(4), v), Formula::truth());
  EXPECT_EQ(formula_of_extension(worlds(v, {"11"}), v).str(), "p & q");
}

TEST(Timestamp, RewritesEveryAtom) {
  EXPECT_EQ(timestamp(Formula::atom("p"), 0), Formula::atom("p", 0));
  EXPECT_EQ(timestamp(parse_formula("p & q"), 2), parse_formula("p@2 & q@2"));
  EXPECT_EQ(timestamp(parse_formula("!(p -> q)"), 1), parse_formula("!(p@1 -> q@1)"));
  EXPECT_THROW(timestamp(parse_formula("p@1"), 2), PreconditionError);
  Vocabulary v = Vocabulary::timestamped({"p"}, 1);
  EXPECT_EQ(extension(parse_formula("p@1"), v).size(), 2u);
}

TEST(Describe, TruncatesLargeSets) {
  Vocabulary v({"p", "q"});
  EXPECT_EQ(describe(worlds(v, {"10", "00"}), v), "{00, 10}");
  Vocabulary big({"a", "b", "c", "d", "e"});
  std::string text = describe(Extension::all(32), big);
  EXPECT_NE(text.find("32 worlds"), std::string::npos);
}
