#include <gtest/gtest.h>

#include "belief/error.hpp"
#include "belief/revision.hpp"
#include "fixtures.hpp"

using namespace belief;
using belief::fixtures::f;
using belief::fixtures::fs;
using belief::fixtures::worlds;

namespace {

const Vocabulary kPQ({"p", "q"});
// w11:0, w10:1, w01:1, w00:2 in index order 00, 01, 10, 11.
const std::vector<Rank> kRanks{2, 1, 1, 0};

// Minimum-rank worlds of e, by scanning ranks upwards.
Extension min_rank_oracle(const std::vector<Rank>& ranks, const Extension& e) {
  for (Rank r = 0; r < 8; ++r) {
    Extension out(ranks.size());
    for (std::uint32_t w = 0; w < ranks.size(); ++w)
      if (ranks[w] == r && e.contains(World{w})) out.insert(World{w});
    if (!out.empty()) return out;
  }
  return Extension(ranks.size());
}

std::vector<Extension> all_extensions() { return all_subsets(Extension::all(4)); }

System example_system(int horizon = 1) {
  auto op = RevisionOperator::from_ranking(kRanks);
  return system_from_revision(op, worlds(kPQ, {"11"}), kPQ, fs({"true", "p", "!p", "q", "!q", "p & q"}), horizon);
}

}  // namespace

TEST(ReviseFromRanking, Examples) {
  Extension k = worlds(kPQ, {"11"});
  EXPECT_EQ(revise_from_ranking(kRanks, k, Extension::all(4)), k);
  EXPECT_EQ(revise_from_ranking(kRanks, k, extension(f("!q"), kPQ)), worlds(kPQ, {"10"}));
  EXPECT_TRUE(revise_from_ranking(kRanks, k, Extension(4)).empty());
  EXPECT_THROW(revise_from_ranking(kRanks, worlds(kPQ, {"10"}), Extension::all(4)), PreconditionError);
}

TEST(ReviseFromRanking, MatchesMinimumRankOracle) {
  for (std::uint32_t code = 0; code < 256; ++code) {
    std::vector<Rank> ranks(4);
    for (int i = 0; i < 4; ++i) ranks[i] = code >> (2 * i) & 3u;
    Extension k = minimal_worlds(ranks, Extension::all(4));
    for (const auto& phi : all_extensions()) ASSERT_EQ(revise_from_ranking(ranks, k, phi), min_rank_oracle(ranks, phi));
  }
}

TEST(CheckAgm, RankingOperatorsPassEveryPostulate) {
  for (std::uint32_t code = 0; code < 256; code += 7) {
    std::vector<Rank> ranks(4);
    for (int i = 0; i < 4; ++i) ranks[i] = code >> (2 * i) & 3u;
    auto op = RevisionOperator::from_ranking(ranks);
    auto report = check_agm(op, minimal_worlds(ranks, Extension::all(4)), all_extensions(), kPQ);
    ASSERT_TRUE(report.all_passed()) << report.render();
  }
}

TEST(CheckAgm, ConstantEmptyOperatorFailsR5) {
  RevisionOperator op([](const Extension& k, const Extension&) { return Extension(k.universe()); });
  auto report = check_agm(op, worlds(kPQ, {"11"}), {Extension::all(4)}, kPQ);
  EXPECT_FALSE(report.passed("R5"));
  EXPECT_NE(report.result("R5").witness.find("phi="), std::string::npos);
}

TEST(CheckAgm, OperatorIgnoringInputFailsR2) {
  RevisionOperator op([](const Extension& k, const Extension&) { return k; });
  auto report = check_agm(op, worlds(kPQ, {"11"}), all_extensions(), kPQ);
  EXPECT_FALSE(report.passed("R2"));
  EXPECT_TRUE(report.passed("R3"));
}

TEST(CheckAgm, OperatorReturningTheInputFailsR4) {
  RevisionOperator op([](const Extension&, const Extension& phi) { return phi; });
  auto report = check_agm(op, worlds(kPQ, {"11"}), all_extensions(), kPQ);
  EXPECT_FALSE(report.passed("R4"));
  EXPECT_TRUE(report.passed("R2"));
}

TEST(RankingOfOperator, RecoversLayers) {
  auto op = RevisionOperator::from_ranking(kRanks);
  EXPECT_EQ(ranking_of_operator(op, worlds(kPQ, {"11"}), 4), kRanks);
  auto gapped = RevisionOperator::from_ranking({5, 3, 3, 0});
  EXPECT_EQ(ranking_of_operator(gapped, worlds(kPQ, {"11"}), 4), kRanks);
}

TEST(SystemFromRevision, BeliefsFollowTheOperator) {
  System sys = example_system();
  auto op = RevisionOperator::from_ranking(kRanks);
  Extension k = worlds(kPQ, {"11"});
  EXPECT_EQ(bel(sys, {}), k);
  EXPECT_EQ(bel(sys, fs({"!q"})), worlds(kPQ, {"10"}));
  for (const auto& phi : fs({"true", "p", "!p", "q", "!q", "p & q"}))
    EXPECT_EQ(bel(sys, {phi}), op(k, extension(phi, kPQ))) << phi.str();
  EXPECT_TRUE(bel(sys, fs({"false"})).empty());
  EXPECT_THROW(system_from_revision(op, Extension(4), kPQ, fs({"true"}), 1), PreconditionError);
}

TEST(ValidateRev, ConstructedSystemPasses) {
  auto report = validate_rev(example_system(2));
  EXPECT_TRUE(report.all_passed()) << report.render();
  for (const char* name : {"REV1", "REV2", "REV3", "REV4", "REV4'"}) EXPECT_TRUE(report.has(name));
}

TEST(ValidateRev, ChangingEnvironmentFailsRev1) {
  Vocabulary v({"p"});
  std::vector<belief::Run> runs{{{World{0}, World{1}}, {f("p")}}, {{World{1}, World{1}}, {f("p")}}};
  System sys(v, runs, PlausibilityMeasure::ranked({0, 1}), 1);
  auto report = validate_rev(sys);
  EXPECT_FALSE(report.passed("REV1"));
}

TEST(ValidateRev, PartialPriorFailsRev2) {
  Vocabulary v({"p"});
  System sys = static_system(v, from_preference(2, {}), fs({"true"}), 1);
  auto report = validate_rev(sys);
  EXPECT_FALSE(report.passed("REV2"));
  EXPECT_TRUE(report.passed("REV1"));
}

TEST(ValidateRev, ImplausibleWorldFailsRev3) {
  Vocabulary v({"p"});
  System sys = static_system(v, PlausibilityMeasure::ranked({0, kInfiniteRank}), fs({"true"}), 1);
  EXPECT_FALSE(validate_rev(sys).passed("REV3"));
}

TEST(ValidateRev, InformativeObservationFailsRev4) {
  // The agent only ever observes p when q holds, so observing p says more
  // than p.
  Vocabulary v({"p", "q"});
  std::vector<belief::Run> runs;
  for (std::uint32_t w = 0; w < 4; ++w) {
    Formula o = (w == 3) ? f("p") : f("true");
    runs.push_back({{World{w}, World{w}}, {o}});
  }
  System sys(v, runs, PlausibilityMeasure::ranked({0, 1, 1, 2}), 1);
  auto report = validate_rev(sys);
  EXPECT_FALSE(report.passed("REV4"));
  EXPECT_TRUE(report.passed("REV1"));
}

TEST(RevisionFromSystem, RoundTripsTheOperator) {
  auto op = RevisionOperator::from_ranking(kRanks);
  Extension k = worlds(kPQ, {"11"});
  System sys = example_system();
  auto back = revision_from_system(sys);
  EXPECT_EQ(back.origin(), RevisionOperator::Origin::System);
  for (const auto& phi : all_extensions()) EXPECT_EQ(back(k, phi), op(k, phi));
  EXPECT_EQ(back(bel(sys, {}), Extension::all(4)), bel(sys, {}));
}

TEST(RevisionFromSystem, RejectsNonRevisionSystems) {
  Vocabulary v({"p"});
  System sys = static_system(v, from_preference(2, {}), fs({"true"}), 1);
  EXPECT_THROW(revision_from_system(sys), ValidationError);
}

TEST(CharacteristicBel, TwoObservationsMatchTheRanking) {
  System sys = example_system(2);
  auto ranks = characteristic_ranks(sys);
  EXPECT_EQ(ranks, kRanks);
  for (const auto& o1 : fs({"p", "!q", "true"}))
    for (const auto& o2 : fs({"q", "!p", "true"})) {
      LocalState s{o1, o2};
      Extension joint = extension(o1 & o2, kPQ);
      EXPECT_EQ(bel(sys, s), min_rank_oracle(ranks, joint)) << describe(s);
      EXPECT_EQ(characteristic_bel(sys, joint), min_rank_oracle(ranks, joint));
    }
}

TEST(ReviseAtState, Examples) {
  System sys = example_system(2);
  auto again = revise_at_state(sys, fs({"p"}), f("p"));
  EXPECT_FALSE(again.contradicts_past);
  EXPECT_EQ(again.beliefs, bel(sys, fs({"p"})));
  auto clash = revise_at_state(sys, fs({"p"}), f("!p"));
  EXPECT_TRUE(clash.contradicts_past);
  EXPECT_TRUE(clash.beliefs.empty());
  auto empty = revise_at_state(sys, {}, f("!q"));
  EXPECT_EQ(empty.beliefs, revision_from_system(sys)(bel(sys, {}), extension(f("!q"), kPQ)));
  // Off the menu: p & !q is never observed.
  auto off = revise_at_state(sys, fs({"p"}), f("p & !q"));
  EXPECT_EQ(off.beliefs, worlds(kPQ, {"10"}));
  EXPECT_THROW(revise_at_state(sys, fs({"false"}), f("p")), PreconditionError);
}

TEST(OperatorAtState, IsAnAgmOperatorAtTheCurrentBeliefs) {
  System sys = example_system(2);
  for (int t = 0; t <= 1; ++t)
    for (const auto& s : sys.attainable_states(t)) {
      auto op = operator_at_state(sys, s);
      auto report = check_agm(op, bel(sys, s), all_extensions(), kPQ);
      EXPECT_TRUE(report.all_passed()) << describe(s) << "\n" << report.render();
    }
}

TEST(EpistemicBel, Examples) {
  System sys = example_system(2);
  EXPECT_EQ(consistent_suffix(sys, fs({"p", "!p"})), fs({"!p"}));
  EXPECT_EQ(epistemic_bel(sys, fs({"p", "!p"})), bel(sys, fs({"!p"})));
  EXPECT_EQ(consistent_suffix(sys, fs({"p & !p"})), LocalState{Formula::falsity()});
  EXPECT_TRUE(epistemic_bel(sys, fs({"p & !p"})).empty());
  EXPECT_EQ(epistemic_bel(sys, {}), bel(sys, {}));
  EXPECT_EQ(epistemic_bel(sys, fs({"p", "q"})), bel(sys, fs({"p", "q"})));
  // Longer than the horizon, still answered by the ranking.
  EXPECT_EQ(epistemic_bel(sys, fs({"true", "!q", "p"})), worlds(kPQ, {"10"}));
}

TEST(CheckAgmEpistemic, HoldsOnRevisionSystems) {
  System sys = example_system(3);
  auto menu = fs({"true", "p", "!p", "q", "!q", "p & q"});
  auto report = check_agm_epistemic(sys, menu);
  EXPECT_TRUE(report.all_passed()) << report.render();
  EXPECT_EQ(epistemic_bel(sys, fs({"p", "q"})), epistemic_bel(sys, fs({"p & q"})));
}
