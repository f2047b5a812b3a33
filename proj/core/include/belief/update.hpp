#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belief/plausibility.hpp"
#include "belief/prop.hpp"
#include "belief/report.hpp"
#include "belief/system.hpp"

namespace belief {

// Distance value id; 0 is the zero distance.
using Distance = std::uint32_t;
// Marks a transition that cannot happen (relaxed mode only).
inline constexpr Distance kImpossible = std::numeric_limits<Distance>::max();

// A finite strict partial order of distance values with 0 below all others.
class DistanceOrder {
 public:
  // `less` pairs (a, b) mean a < b; they are closed transitively and 0 is
  // put below everything. Cycles throw PreconditionError.
  DistanceOrder(std::vector<std::string> names, const std::vector<std::pair<Distance, Distance>>& less);
  static DistanceOrder chain(std::size_t count);  // 0 < 1 < ... < count-1

  std::size_t size() const { return names_.size(); }
  const std::string& name(Distance d) const { return names_.at(d); }
  std::optional<Distance> find(const std::string& name) const;
  std::string show(Distance d) const { return d == kImpossible ? "inf" : name(d); }

  // Strict order; an impossible distance is above every possible one.
  bool less(Distance a, Distance b) const;

 private:
  std::vector<std::string> names_;
  std::vector<Bits> below_;  // below_[b] = values strictly less than b
};

// Worlds are all assignments of the vocabulary, so distinct worlds are always
// told apart by some formula.
class UpdateStructure {
 public:
  // table[from * |W| + to]; zero exactly on the diagonal.
  UpdateStructure(Vocabulary vocab, DistanceOrder order, std::vector<Distance> table);
  static UpdateStructure hamming(Vocabulary vocab);

  const Vocabulary& vocab() const { return vocab_; }
  const DistanceOrder& order() const { return order_; }
  std::size_t world_count() const { return vocab_.world_count(); }
  Distance distance(World from, World to) const { return table_[from.index * world_count() + to.index]; }
  bool possible(World from, World to) const { return distance(from, to) != kImpossible; }
  bool has_impossible() const;
  // d(from, a) < d(from, b)
  bool closer(World from, World a, World b) const { return order_.less(distance(from, a), distance(from, b)); }

 private:
  Vocabulary vocab_;
  DistanceOrder order_;
  std::vector<Distance> table_;
};

// Worlds of b reachable from some world of a with no strictly closer b-world.
Extension min_u(const UpdateStructure& u, const Extension& a, const Extension& b);
Extension km_update(const UpdateStructure& u, const Extension& mu, const Extension& phi);

using UpdateOperator = std::function<Extension(const Extension&, const Extension&)>;

// U1..U8 over all tuples drawn from `inputs`; U7 only for complete mu.
Report check_km(const UpdateOperator& op, const std::vector<Extension>& inputs, const Vocabulary& vocab);

// Environment sequences of length horizon+1, numbered base |W| with time 0
// as the leading digit.
std::uint32_t sequence_id(const std::vector<World>& envs, std::size_t world_count);
std::vector<World> sequence_of(std::uint32_t id, std::size_t world_count, int horizon);
std::size_t sequence_count(std::size_t world_count, int horizon);  // throws past the budget
inline constexpr std::size_t kMaxSequences = 4096;

// a before b: at the first step after a shared prefix, a moves a strictly
// smaller distance. Sequences that differ at time 0 are incomparable.
bool lex_prefers(const UpdateStructure& u, const std::vector<World>& a, const std::vector<World>& b);
bool feasible(const UpdateStructure& u, const std::vector<World>& envs);

// preferred[k] = sequences strictly preferred to sequence k (feasible ones).
std::vector<Bits> lex_preference(const UpdateStructure& u, int horizon);
// Preferential prior over the runs, keyed by environment sequence.
PlausibilityMeasure lex_prior(const UpdateStructure& u, int horizon, const std::vector<Run>& runs);

// Every feasible environment sequence paired with every observation sequence
// over the menu that is true where it is made.
System system_from_update(const UpdateStructure& u, int horizon, const std::vector<Formula>& menu);

// States by the prefix-cell criterion on the truth of the observations.
Extension states(const System& sys, const LocalState& s);

// States(s.psi) = min_U(States(s), psi) and States(s) = bel(s) for every
// attainable s.
Report check_update_correspondence(const System& sys, const UpdateStructure& u, const std::vector<Formula>& menu);

// No phi-world is strictly closer to w than w2.
bool sufficient_information(const UpdateStructure& u, World w, World w2, const Formula& phi);

// Correct beliefs at (r,m) plus sufficient information in the observation
// made at m+1 imply correct beliefs at (r,m+1).
Report check_correctness_preservation(const System& sys, const UpdateStructure& u);

struct UpdOptions {
  bool relaxed = false;          // impossible transitions: UPD3 dropped, UPD4 weakened
  std::size_t pair_budget = 1u << 21;
  std::size_t samples = 400;
  std::uint64_t seed = 5;
};

Report check_upd2(const System& sys, const UpdateStructure& u, const UpdOptions& options = {});
Report check_upd3(const System& sys, const UpdOptions& options = {});
// Also emits UPD4' (only when the observed event is above bottom).
Report check_upd4(const System& sys, const UpdOptions& options = {});
Report validate_upd(const System& sys, const UpdateStructure& u, const UpdOptions& options = {});

struct TraceStep {
  int time = 0;
  std::optional<Formula> observation;
  Extension beliefs;
};

std::vector<TraceStep> belief_trace(const System& sys, const LocalState& observations);
// Environment sequences of the most plausible runs at s.
std::vector<std::vector<World>> most_plausible_histories(const System& sys, const LocalState& s);

struct BorrowedCar {
  UpdateStructure structure;
  System system;
  LocalState observations;  // times 1..4; the first sets the initial belief
};

BorrowedCar borrowed_car();
// MU2, MU3 and DEFER rows for the scenario's trace.
Report borrowed_car_checks(const BorrowedCar& scenario);

}  // namespace belief
