#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "belief/bits.hpp"
#include "belief/kpt.hpp"
#include "belief/plausibility.hpp"
#include "belief/prop.hpp"
#include "belief/report.hpp"

namespace belief {

// The agent's local state: the observations made so far.
using LocalState = std::vector<Formula>;

std::string describe(const LocalState& s);  // <p, !q>

// A finite run: envs[m] is the environment at time m (0..H) and obs[m-1] the
// observation made at time m (1..H).
struct Run {
  std::vector<World> envs;
  std::vector<Formula> obs;
  bool operator==(const Run&) const = default;
};

struct Point {
  std::size_t run = 0;
  int time = 0;
  auto operator<=>(const Point&) const = default;
};

// Stand-in for conditioning: the plausibility on one local state's points
// (given as run sets). Used to model systems that break the prior rule.
using LocalAssignment = std::function<Ordering(const LocalState&, const Bits&, const Bits&)>;

// Points of one local state at one time. Since the system is synchronous,
// each run contributes at most one point, so point sets are run sets.
struct LocalClass {
  std::vector<std::uint32_t> observations;  // observation ids
  Bits runs;
};

// A synchronous interpreted plausibility system with perfect recall over a
// finite horizon. The constructor only checks shapes; validate_bcs reports
// semantic violations.
class System {
 public:
  System(Vocabulary vocab, std::vector<Run> runs, PlausibilityMeasure prior, int horizon);
  // `admissible` holds the worlds consistent with the background theory.
  System(Vocabulary vocab, std::vector<Run> runs, PlausibilityMeasure prior, int horizon,
         Extension admissible);

  const Vocabulary& vocab() const { return vocab_; }
  const std::vector<Run>& runs() const { return runs_; }
  std::size_t run_count() const { return runs_.size(); }
  const PlausibilityMeasure& prior() const { return prior_; }
  int horizon() const { return horizon_; }
  const Extension& admissible() const { return admissible_; }
  bool consistent(const Extension& e) const { return e.intersects(admissible_); }

  // Distinct observations in order of first occurrence.
  const std::vector<Formula>& observations() const { return observations_; }
  std::optional<std::uint32_t> observation_id(const Formula& f) const;
  std::uint32_t obs_id(std::size_t run, int time) const;

  const std::vector<LocalClass>& classes(int time) const { return classes_.at(time); }
  std::size_t class_of(std::size_t run, int time) const { return class_of_.at(time)[run]; }
  LocalState state_of(const LocalClass& c) const;
  LocalState local_state(Point p) const;

  // Runs whose first |s| observations are s; empty if s is unattainable.
  Bits runs_with(const LocalState& s) const;
  bool attainable(const LocalState& s) const { return runs_with(s).any(); }
  std::vector<LocalState> attainable_states(int time) const;

  Bits runs_where(const Extension& e, int time) const;
  Extension worlds_at(const Bits& runs, int time) const;
  Bits all_runs() const { return full_bits(runs_.size()); }

  System with_assignment(LocalAssignment assignment) const;
  const LocalAssignment* assignment() const { return assignment_ ? assignment_.get() : nullptr; }

 private:
  void index();

  Vocabulary vocab_;
  std::vector<Run> runs_;
  PlausibilityMeasure prior_;
  int horizon_;
  Extension admissible_;
  std::vector<Formula> observations_;
  std::map<std::string, std::uint32_t> observation_ids_;
  std::vector<std::vector<std::uint32_t>> obs_ids_;  // [run][time-1]
  std::vector<std::vector<LocalClass>> classes_;     // [time]
  std::vector<std::vector<std::size_t>> class_of_;   // [time][run]
  std::shared_ptr<const LocalAssignment> assignment_;
};

bool indistinguishable(const System& sys, Point a, Point b);

// The plausibility space at the points with local state s: conditioning the
// prior on the runs through those points.
class LocalSpace {
 public:
  LocalSpace(const System& sys, LocalState state);

  int time() const { return time_; }
  const LocalState& state() const { return state_; }
  const Bits& carrier() const { return carrier_; }
  bool empty() const { return carrier_.none(); }

  // Arguments are run sets inside the carrier.
  Ordering compare(const Bits& a, const Bits& b) const;
  bool exceeds(const Bits& a, const Bits& b) const { return compare(a, b) == Ordering::Greater; }
  bool at_least(const Bits& a, const Bits& b) const;
  bool is_bottom(const Bits& a) const;
  bool conditional(const Bits& given, const Bits& then) const;
  Bits most_plausible() const;
  bool uses_conditioning() const;

 private:
  const System* sys_;
  LocalState state_;
  int time_;
  Bits carrier_;
};

LocalSpace condition_prior(const System& sys, const LocalState& s);

// Model checking; throws HorizonError if next operators run past the horizon.
bool model_check(const System& sys, Point p, const KptFormula& f);

// Truth of f at every point, by time then run; entries at times where f is
// undefined (too close to the horizon) are empty.
std::vector<Bits> label(const System& sys, const KptFormula& f);

// Belief extension at a local state; empty when unattainable or when the
// local space gives its whole carrier bottom plausibility.
Extension bel(const System& sys, const LocalState& s);
// The same set computed from the conditional definition of belief.
Extension bel_by_conditionals(const System& sys, const LocalState& s);

struct PriorRuleOptions {
  std::size_t max_points = 12;
};

Report check_prior_local_rule(const System& sys, const PriorRuleOptions& options = {});

struct BcsOptions {
  std::size_t exhaustive_points = 10;
  std::size_t samples = 2000;
  std::uint64_t seed = 7;
};

Report validate_bcs(const System& sys, const BcsOptions& options = {});

// Text of one run: env worlds and observations.
std::string describe_run(const System& sys, std::size_t run);

}  // namespace belief
