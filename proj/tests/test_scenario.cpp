#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "belief/commands.hpp"
#include "belief/scenario.hpp"
#include "fixtures.hpp"

using namespace belief;
using belief::fixtures::f;
using belief::fixtures::fs;

namespace {

std::string scenario_path(const std::string& name) { return std::string(BELIEF_SOURCE_DIR) + "/scenarios/" + name; }

std::size_t error_line(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e.line();
  }
  return 0;
}

const char* kMinimal = "vocab p\nprior ranked\n  1 0\n  0 1\nend\n";

}  // namespace

TEST(Scenario, MinimalRankedScenarioLoads) {
  Scenario sc = parse_scenario(kMinimal);
  EXPECT_EQ(sc.vocab, std::vector<std::string>{"p"});
  EXPECT_EQ(sc.prior.kind, PriorSpec::Kind::Ranked);
  EXPECT_EQ(world_ranks(sc), (std::vector<Rank>{1, 0}));
  EXPECT_EQ(scenario_horizon(sc), 0);
  EXPECT_EQ(scenario_menu(sc), fs({"true", "p", "!p"}));
}

TEST(Scenario, UnlistedWorldsAreImplausible) {
  Scenario sc = parse_scenario("vocab p q\nprior ranked\n  11 0\n  10 2\nend\n");
  EXPECT_EQ(world_ranks(sc), (std::vector<Rank>{kInfiniteRank, kInfiniteRank, 2, 0}));
  Scenario inf = parse_scenario("vocab p\nprior ranked\n  1 0\n  0 inf\nend\n");
  EXPECT_EQ(world_ranks(inf)[0], kInfiniteRank);
}

TEST(Scenario, LexicographicNeedsADistance) {
  EXPECT_THROW(parse_scenario("vocab p\nprior lexicographic\n"), ScenarioError);
  EXPECT_THROW(parse_scenario("vocab p\nprior ranked\n  1 0\nend\ndistance hamming\n"), ScenarioError);
  EXPECT_NO_THROW(parse_scenario("vocab p\nprior lexicographic\ndistance hamming\n"));
}

TEST(Scenario, ErrorsCarryTheLine) {
  EXPECT_EQ(error_line("vocab p\nhorizon two\n"), 2u);
  EXPECT_EQ(error_line("vocab p\n# comment\nmenu\n  p & r\nend\n"), 4u);
  EXPECT_EQ(error_line("vocab p\nprior ranked\n  2 0\nend\n"), 3u);
  EXPECT_EQ(error_line("vocab p\nobserve\n  p &\nend\n"), 3u);
  EXPECT_EQ(error_line("vocab p\nfrobnicate\n"), 2u);
  EXPECT_EQ(error_line("vocab p\nmenu\n  p\n"), 2u);
  EXPECT_GT(error_line("vocab p\nprior ranked\n  1 0\n  0 1\nend\ninitial !p\n"), 0u);
  EXPECT_THROW(load_scenario("/nonexistent/file.scn"), Error);
}

TEST(Scenario, CircuitBlock) {
  Scenario sc = load_scenario(scenario_path("three_gates.scn"));
  ASSERT_TRUE(sc.circuit);
  EXPECT_EQ(sc.circuit->gates.size(), 3u);
  EXPECT_EQ(sc.circuit->tests.size(), 2u);
  EXPECT_EQ(scenario_horizon(sc), 2);
  Circuit c = scenario_circuit(sc);
  EXPECT_EQ(scenario_vocabulary(sc), c.vocabulary());
  EXPECT_THROW(parse_scenario("circuit\n  gate g1 NAND a b -> c\nend\n"), ScenarioError);
  EXPECT_THROW(parse_scenario("prior ranked\n  0 0\nend\ncircuit\n  gate g1 NOT a -> c\nend\n"), ScenarioError);
}

TEST(Scenario, UpdateScenariosPrependTheInitialBelief) {
  Scenario sc = load_scenario(scenario_path("borrowed_car.scn"));
  LocalState obs = scenario_observations(sc);
  ASSERT_EQ(obs.size(), 4u);
  EXPECT_EQ(obs.front(), f("car_parked_outside & fuel_tank_full"));
  EXPECT_EQ(scenario_horizon(sc), 4);
  EXPECT_FALSE(update_structure(sc).has_impossible());
  EXPECT_EQ(parse_scenario(borrowed_car_text()), sc);
}

TEST(Scenario, DistanceTablesAllowImpossibleSteps) {
  Scenario sc = load_scenario(scenario_path("table_distance.scn"));
  UpdateStructure u = update_structure(sc);
  EXPECT_TRUE(u.has_impossible());
  EXPECT_FALSE(u.possible(World{1}, World{0}));
  EXPECT_TRUE(u.possible(World{0}, World{1}));
}

TEST(Scenario, PrinterRoundTripsEveryBundledScenario) {
  for (const char* name :
       {"borrowed_car.scn", "ranked_revision.scn", "three_gates.scn", "preference.scn", "table_distance.scn"}) {
    Scenario sc = load_scenario(scenario_path(name));
    std::string printed = print_scenario(sc);
    EXPECT_EQ(parse_scenario(printed), sc) << name << "\n" << printed;
    EXPECT_EQ(print_scenario(parse_scenario(printed)), printed) << name;
  }
}

TEST(Scenario, BuildsTheDescribedSystems) {
  Scenario ranked = load_scenario(scenario_path("ranked_revision.scn"));
  System s1 = scenario_system(ranked, 2);
  EXPECT_EQ(bel(s1, {}), extension(f("rain & wet"), s1.vocab()));
  Scenario pref = load_scenario(scenario_path("preference.scn"));
  System s2 = scenario_system(pref, 1);
  EXPECT_EQ(s2.prior().kind(), PlausibilityMeasure::Kind::Preferential);
  EXPECT_EQ(bel(s2, {}), extension(f("p | !q"), s2.vocab()));
  Scenario car = load_scenario(scenario_path("borrowed_car.scn"));
  EXPECT_EQ(scenario_system(car, 4).horizon(), 4);
}
