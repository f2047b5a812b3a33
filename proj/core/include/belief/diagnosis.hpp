#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "belief/prop.hpp"
#include "belief/report.hpp"
#include "belief/system.hpp"

namespace belief {

enum class GateKind { And, Or, Not, Xor };
std::string to_string(GateKind kind);
GateKind parse_gate_kind(const std::string& text);  // AND, OR, NOT, XOR

struct Gate {
  std::string id;
  GateKind kind = GateKind::And;
  std::vector<std::string> inputs;
  std::string output;
  bool operator==(const Gate&) const = default;
};

bool gate_value(GateKind kind, const std::vector<bool>& inputs);

// Lines are numbered in order of first mention. Input lines are driven by no
// gate, output lines feed no gate.
class Circuit {
 public:
  // Throws PreconditionError for cycles, doubly driven lines or bad arity.
  explicit Circuit(std::vector<Gate> gates);

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& lines() const { return lines_; }
  std::vector<std::string> input_lines() const;
  std::vector<std::string> output_lines() const;
  std::size_t line_index(const std::string& line) const;  // throws for unknown lines
  const std::vector<std::size_t>& topological_order() const { return order_; }  // gate indices

  // f_<gate> for every gate, then h_<line> for every line.
  Vocabulary vocabulary() const;
  Formula fault_atom(std::size_t gate) const;
  Formula line_atom(std::size_t line) const;

  bool operator==(const Circuit& o) const { return gates_ == o.gates_; }

 private:
  std::vector<Gate> gates_;
  std::vector<std::string> lines_;
  std::vector<int> driver_;  // gate driving each line, or -1
  std::vector<std::size_t> order_;
};

// Bit i is set when gate i is faulty.
struct FaultSet {
  std::uint32_t mask = 0;
  std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(mask)); }
  bool contains(std::size_t gate) const { return mask >> gate & 1u; }
  auto operator<=>(const FaultSet&) const = default;
};

using DiagnosisSet = std::set<FaultSet>;
std::string describe(const DiagnosisSet& d, const Circuit& c);  // {{}, {g1}}

struct DiagState {
  FaultSet faults;
  std::vector<bool> lines;
  bool operator==(const DiagState&) const = default;
};

World encode(const Circuit& c, const DiagState& s);
DiagState decode(const Circuit& c, World w);

// Healthy gates compute their function; faulty gates may output anything.
bool consistent(const Circuit& c, const DiagState& s);
std::vector<DiagState> consistent_states(const Circuit& c);
Extension consistent_worlds(const Circuit& c);

// Values on the input lines for one test.
using TestVector = std::map<std::string, bool>;

struct DiagnosisSystem {
  Circuit circuit;
  std::vector<TestVector> tests;
  std::vector<std::string> observed;
  System system;
};

// One step per test. Faults stay fixed along a run, every step's lines are
// consistent with the circuit and the test inputs, and the agent observes the
// observed lines. Runs are ranked by the number of faults. Observed lines
// default to the input and output lines.
DiagnosisSystem build_diag_system(Circuit c, std::vector<TestVector> tests, std::vector<std::string> observed = {});

// Observation made at a state: one literal per observed line.
Formula io_formula(const DiagnosisSystem& d, const DiagState& s);

// Fault sets not disbelieved at s.
DiagnosisSet diag(const DiagnosisSystem& d, const LocalState& s);

// Whether some behaviour of the circuit with these faults explains each
// observation of s under its test, found by simulating the circuit.
bool explains(const DiagnosisSystem& d, FaultSet f, const LocalState& s);

// Both branches of the belief-change characterisation and the two corollaries
// over every observation prefix, plus fault persistence and reliable
// observations.
Report check_prop_diag(const DiagnosisSystem& d);

// The same runs over the fault atoms alone, each observation replaced by the
// fault sets it is consistent with.
System fault_projection(const DiagnosisSystem& d);
// Beliefs about faults agree at corresponding points.
Report check_fault_projection(const DiagnosisSystem& d, const System& projected);

}  // namespace belief
