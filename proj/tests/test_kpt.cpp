#include <gtest/gtest.h>

#include "belief/error.hpp"
#include "belief/kpt.hpp"
#include "belief/revision.hpp"
#include "belief/system.hpp"
#include "belief/update.hpp"
#include "fixtures.hpp"

using namespace belief;
using belief::fixtures::f;
using belief::fixtures::fs;

namespace {

KptFormula fact(const char* text) { return KptFormula::fact(parse_formula(text)); }

// Formulas with at most `depth` nested operators over a few facts.
std::vector<KptFormula> kpt_formulas(std::size_t depth) {
  std::vector<KptFormula> level{fact("p"), fact("q"), KptFormula::learn(parse_formula("p"))};
  std::vector<KptFormula> all = level;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<KptFormula> next = all;
    for (const auto& a : all) {
      next.push_back(!a);
      next.push_back(KptFormula::know(a));
      next.push_back(KptFormula::believe(a));
      next.push_back(KptFormula::next(a));
    }
    if (d + 1 < depth || depth == 1) {
      for (const auto& a : all)
        for (const auto& b : all) {
          next.push_back(a & b);
          next.push_back(KptFormula::cond(a, b));
        }
    }
    all = std::move(next);
  }
  return all;
}

System revision_system() {
  Vocabulary v({"p", "q"});
  auto op = RevisionOperator::from_ranking({1, 2, 0, 1});
  return system_from_revision(op, Extension::of(4, {2}), v, fs({"true", "p", "!q", "p | q"}), 2);
}

System update_system() {
  return system_from_update(UpdateStructure::hamming(Vocabulary({"p", "q"})), 2, fs({"true", "p", "q"}));
}

void expect_subset(const Bits& a, const Bits& b, const KptFormula& g, int t) {
  ASSERT_TRUE(a.is_subset_of(b)) << g.str() << " at time " << t;
}

void check_axioms(const System& sys) {
  auto formulas = kpt_formulas(2);
  for (const auto& g : formulas) {
    auto phi = label(sys, g);
    auto k = label(sys, KptFormula::know(g));
    auto kk = label(sys, KptFormula::know(KptFormula::know(g)));
    auto not_k = label(sys, !KptFormula::know(g));
    auto k_not_k = label(sys, KptFormula::know(!KptFormula::know(g)));
    auto b = label(sys, KptFormula::believe(g));
    auto kb = label(sys, KptFormula::know(KptFormula::believe(g)));
    int last = sys.horizon() - static_cast<int>(g.next_depth());
    for (int t = 0; t <= last; ++t) {
      expect_subset(k[t], phi[t], g, t);         // T
      expect_subset(k[t], kk[t], g, t);          // 4
      expect_subset(not_k[t], k_not_k[t], g, t); // 5
      expect_subset(k[t], b[t], g, t);           // K implies B
      expect_subset(b[t], kb[t], g, t);          // B implies KB
    }
  }
  auto small = kpt_formulas(1);
  for (const auto& a : small)
    for (const auto& c : small) {
      auto lhs = label(sys, KptFormula::know(implies(a, c)) & KptFormula::know(a));
      auto rhs = label(sys, KptFormula::know(c));
      int last = sys.horizon() - static_cast<int>(std::max(a.next_depth(), c.next_depth()));
      for (int t = 0; t <= last; ++t) expect_subset(lhs[t], rhs[t], implies(a, c), t);
    }
}

}  // namespace

TEST(Kpt, PrintsAndMeasuresNextDepth) {
  auto g = KptFormula::next(KptFormula::know(fact("p")) & KptFormula::next(fact("q")));
  EXPECT_EQ(g.next_depth(), 2u);
  EXPECT_EQ(KptFormula::believe(fact("p")).str(), "Bp");
  EXPECT_EQ(KptFormula::learn(parse_formula("p & q")).str(), "learn(p & q)");
  EXPECT_TRUE(KptFormula::know(fact("p")) == KptFormula::know(fact("p")));
}

TEST(Kpt, KnowledgeIsS5AndBeliefFollowsKnowledgeOnRevisionSystem) { check_axioms(revision_system()); }

TEST(Kpt, KnowledgeIsS5AndBeliefFollowsKnowledgeOnUpdateSystem) { check_axioms(update_system()); }

TEST(Kpt, NextPastHorizonThrows) {
  System sys = revision_system();
  auto g = KptFormula::next(KptFormula::next(fact("p")));
  EXPECT_NO_THROW(model_check(sys, Point{0, 0}, g));
  EXPECT_THROW(model_check(sys, Point{0, 1}, g), HorizonError);
  EXPECT_THROW(model_check(sys, Point{sys.run_count(), 0}, fact("p")), PreconditionError);
}

TEST(Kpt, LearnHoldsExactlyWhereTheObservationWasMade) {
  System sys = revision_system();
  auto learned = label(sys, KptFormula::learn(parse_formula("p")));
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    EXPECT_FALSE(learned[0].test(r));
    for (int t = 1; t <= sys.horizon(); ++t) EXPECT_EQ(learned[t].test(r), sys.runs()[r].obs[t - 1] == f("p"));
  }
}

TEST(Kpt, BeliefAfterLearningMatchesBel) {
  System sys = revision_system();
  auto believed = label(sys, KptFormula::believe(fact("p & !q")));
  for (std::size_t r = 0; r < sys.run_count(); ++r)
    for (int t = 0; t <= sys.horizon(); ++t) {
      Extension b = bel(sys, sys.local_state(Point{r, t}));
      EXPECT_EQ(believed[t].test(r), entails(b, f("p & !q"), sys.vocab()));
    }
}
