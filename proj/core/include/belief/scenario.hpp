#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "belief/diagnosis.hpp"
#include "belief/error.hpp"
#include "belief/plausibility.hpp"
#include "belief/prop.hpp"
#include "belief/system.hpp"
#include "belief/update.hpp"

namespace belief {

class ScenarioError : public Error {
 public:
  ScenarioError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct PriorSpec {
  enum class Kind { None, Ranked, Preference, Lexicographic };
  Kind kind = Kind::None;
  std::vector<std::pair<std::string, Rank>> ranks;          // world bits, rank; unlisted worlds are implausible
  std::vector<std::pair<std::string, std::string>> prefer;  // first strictly more plausible
  bool operator==(const PriorSpec&) const = default;
};

struct DistanceSpec {
  bool hamming = true;
  std::vector<std::string> values;  // the first is the zero distance
  std::vector<std::pair<std::string, std::string>> less;
  // Distances from a world to every world in canonical order; "inf" where
  // the transition cannot happen.
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  bool operator==(const DistanceSpec&) const = default;
};

struct CircuitSpec {
  std::vector<Gate> gates;
  std::vector<std::string> observed;  // empty: inputs and outputs
  std::vector<TestVector> tests;
  bool operator==(const CircuitSpec&) const = default;
};

struct Scenario {
  std::vector<std::string> vocab;
  std::optional<int> timestamps;  // vocabulary of p@0..p@N
  std::optional<int> horizon;
  std::optional<Formula> initial;
  PriorSpec prior;
  std::optional<DistanceSpec> distance;
  std::vector<Formula> menu;
  LocalState observations;
  std::optional<CircuitSpec> circuit;
  bool operator==(const Scenario&) const = default;
};

// Parsing checks every invariant; errors carry the offending line.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
std::string print_scenario(const Scenario& sc);

Vocabulary scenario_vocabulary(const Scenario& sc);
int scenario_horizon(const Scenario& sc);  // defaults to the number of observations
PlausibilityMeasure world_prior(const Scenario& sc);  // ranked or preference
std::vector<Rank> world_ranks(const Scenario& sc);     // ranked only
UpdateStructure update_structure(const Scenario& sc);
Circuit scenario_circuit(const Scenario& sc);

// The menu, or true and every literal when none is given.
std::vector<Formula> scenario_menu(const Scenario& sc);
// The observation sequence; for update scenarios the initial formula is the
// first observation.
LocalState scenario_observations(const Scenario& sc);

// The system the scenario describes at the given horizon.
System scenario_system(const Scenario& sc, int horizon);

}  // namespace belief
