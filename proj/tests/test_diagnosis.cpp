#include <algorithm>

#include <gtest/gtest.h>

#include "belief/diagnosis.hpp"
#include "belief/error.hpp"
#include "belief/revision.hpp"
#include "fixtures.hpp"

using namespace belief;
using belief::fixtures::f;

namespace {

Circuit and_gate() { return Circuit({Gate{"c1", GateKind::And, {"a", "b"}, "o"}}); }

Circuit three_gates() {
  return Circuit({Gate{"g1", GateKind::Xor, {"a", "b"}, "x"}, Gate{"g2", GateKind::And, {"x", "c"}, "y"},
                  Gate{"g3", GateKind::Not, {"y"}, "z"}});
}

// Two inverters in a row: z should equal a.
Circuit inverter_chain() {
  return Circuit({Gate{"g1", GateKind::Not, {"a"}, "x"}, Gate{"g2", GateKind::Not, {"x"}, "z"}});
}

std::size_t count_with_faults(const std::vector<DiagState>& states, std::uint32_t mask) {
  return static_cast<std::size_t>(
      std::count_if(states.begin(), states.end(), [&](const DiagState& s) { return s.faults.mask == mask; }));
}

// Minimal fault sets with, at every step, a consistent state under that
// step's test whose observation is the one made.
DiagnosisSet diagnosis_oracle(const DiagnosisSystem& d, const LocalState& s) {
  auto states = consistent_states(d.circuit);
  std::vector<FaultSet> fits;
  for (std::uint32_t mask = 0; mask < (1u << d.circuit.gates().size()); ++mask) {
    bool ok = true;
    for (std::size_t k = 0; k < s.size() && ok; ++k) {
      bool step = false;
      for (const auto& st : states) {
        if (st.faults.mask != mask) continue;
        bool inputs = true;
        for (const auto& [line, value] : d.tests[k]) inputs = inputs && st.lines[d.circuit.line_index(line)] == value;
        if (inputs && io_formula(d, st) == s[k]) step = true;
      }
      ok = step;
    }
    if (ok) fits.push_back(FaultSet{mask});
  }
  DiagnosisSet out;
  std::size_t best = 99;
  for (auto fs : fits) best = std::min(best, fs.size());
  for (auto fs : fits)
    if (fs.size() == best) out.insert(fs);
  return out;
}

}  // namespace

TEST(Circuit, ValidatesStructure) {
  EXPECT_THROW(Circuit({Gate{"g", GateKind::Not, {"a", "b"}, "o"}}), PreconditionError);
  EXPECT_THROW(Circuit({Gate{"g", GateKind::Not, {"a"}, "o"}, Gate{"h", GateKind::Not, {"b"}, "o"}}),
               PreconditionError);
  EXPECT_THROW(Circuit({Gate{"g", GateKind::Not, {"o"}, "x"}, Gate{"h", GateKind::Not, {"x"}, "o"}}),
               PreconditionError);
  Circuit c = three_gates();
  EXPECT_EQ(c.lines(), (std::vector<std::string>{"a", "b", "x", "c", "y", "z"}));
  EXPECT_EQ(c.input_lines(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(c.output_lines(), (std::vector<std::string>{"z"}));
  EXPECT_EQ(c.vocabulary().atom_count(), 9u);
  EXPECT_EQ(c.fault_atom(1), f("f_g2"));
  EXPECT_EQ(c.line_atom(5), f("h_z"));
  EXPECT_EQ(parse_gate_kind("XOR"), GateKind::Xor);
  EXPECT_EQ(to_string(GateKind::And), "AND");
}

TEST(Circuit, EncodeDecodeRoundTrips) {
  Circuit c = three_gates();
  for (const auto& s : consistent_states(c)) EXPECT_EQ(decode(c, encode(c, s)), s);
  EXPECT_EQ(consistent_worlds(c).size(), consistent_states(c).size());
}

TEST(ConsistentStates, AndGate) {
  auto states = consistent_states(and_gate());
  EXPECT_EQ(count_with_faults(states, 0), 4u);
  EXPECT_EQ(count_with_faults(states, 1), 8u);
  for (const auto& s : states)
    if (s.faults.mask == 0) EXPECT_EQ(s.lines[2], s.lines[0] && s.lines[1]);
}

TEST(ConsistentStates, ChainComposesTruthTables) {
  auto states = consistent_states(inverter_chain());
  EXPECT_EQ(count_with_faults(states, 0), 2u);
  for (const auto& s : states)
    if (s.faults.mask == 0) EXPECT_EQ(s.lines[2], s.lines[0]);
  EXPECT_EQ(count_with_faults(states, 3), 8u);
}

TEST(BuildDiagSystem, FaultFreeObservationsKeepTheHealthyBelief) {
  auto d = build_diag_system(three_gates(), {{{"a", true}, {"b", false}, {"c", true}}});
  EXPECT_TRUE(validate_bcs(d.system).all_passed());
  EXPECT_EQ(diag(d, {}), DiagnosisSet{FaultSet{}});
  LocalState healthy{f("h_a & !h_b & h_c & !h_z")};
  ASSERT_TRUE(d.system.attainable(healthy));
  EXPECT_EQ(diag(d, healthy), DiagnosisSet{FaultSet{}});
  // Beliefs at time 0 are exactly the fault-free consistent states.
  Extension healthy_worlds(d.system.vocab().world_count());
  for (const auto& s : consistent_states(d.circuit))
    if (s.faults.mask == 0) healthy_worlds.insert(encode(d.circuit, s));
  EXPECT_EQ(bel(d.system, {}), healthy_worlds);
}

TEST(BuildDiagSystem, SingleFaultsWithoutTheirConjunction) {
  auto d = build_diag_system(inverter_chain(), {{{"a", true}}});
  LocalState wrong{f("h_a & !h_z")};
  DiagnosisSet expected{FaultSet{1}, FaultSet{2}};
  EXPECT_EQ(diag(d, wrong), expected);
  Extension b = bel(d.system, wrong);
  EXPECT_TRUE(entails(b, f("f_g1 | f_g2"), d.system.vocab()));
  EXPECT_TRUE(entails(b, f("!(f_g1 & f_g2)"), d.system.vocab()));
  EXPECT_EQ(describe(expected, d.circuit), "{{g1}, {g2}}");
}

TEST(Diag, MatchesTheOracleOnEveryPrefix) {
  auto d = build_diag_system(three_gates(), {{{"a", true}, {"b", false}, {"c", true}},
                                             {{"a", true}, {"b", true}, {"c", true}}});
  for (int t = 0; t <= d.system.horizon(); ++t)
    for (const auto& s : d.system.attainable_states(t)) {
      ASSERT_EQ(diag(d, s), diagnosis_oracle(d, s)) << describe(s);
      for (auto fs : diag(d, s)) ASSERT_TRUE(explains(d, fs, s));
    }
}

TEST(CheckPropDiag, PassesWithSurprises) {
  auto d = build_diag_system(three_gates(), {{{"a", true}, {"b", false}, {"c", true}},
                                             {{"a", true}, {"b", true}, {"c", true}}});
  auto report = check_prop_diag(d);
  EXPECT_TRUE(report.all_passed()) << report.render();
  for (const char* name : {"FAULT-PERSISTENCE", "IO-RELIABLE", "DIAG-INITIAL", "DIAG-FILTER", "DIAG-SURPRISE",
                           "DIAG-DISJOINT", "DIAG-CARDINALITY"})
    EXPECT_TRUE(report.has(name)) << name;
}

TEST(CheckPropDiag, StuckOutputSurprisesAndMovesTheDiagnosis) {
  auto d = build_diag_system(inverter_chain(), {{{"a", true}}, {{"a", false}}});
  LocalState first{f("h_a & h_z")};
  LocalState stuck{f("h_a & h_z"), f("!h_a & h_z")};
  DiagnosisSet before = diag(d, first);
  DiagnosisSet after = diag(d, stuck);
  EXPECT_EQ(before, DiagnosisSet{FaultSet{}});
  for (auto fs : after) {
    EXPECT_FALSE(before.count(fs));
    EXPECT_GT(fs.size(), 0u);
  }
  EXPECT_TRUE(check_prop_diag(d).all_passed());
}

TEST(DiagnosisSystem, RevisionConditionsOnRawAndProjectedSystems) {
  auto d = build_diag_system(three_gates(), {{{"a", true}, {"b", false}, {"c", true}},
                                             {{"a", true}, {"b", true}, {"c", true}}});
  auto raw = validate_rev(d.system);
  EXPECT_FALSE(raw.passed("REV1"));  // line values change between tests
  EXPECT_TRUE(raw.passed("REV2"));
  EXPECT_TRUE(is_qualitative(PlausibilityMeasure::ranked({0, 1, 1, 2})));
  System projected = fault_projection(d);
  auto report = check_fault_projection(d, projected);
  EXPECT_TRUE(report.all_passed()) << report.render();
  EXPECT_TRUE(validate_rev(projected).passed("REV1"));
}
