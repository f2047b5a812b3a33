#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "belief/plausibility.hpp"
#include "belief/prop.hpp"
#include "belief/report.hpp"
#include "belief/system.hpp"

namespace belief {

// A semantic revision operator on model sets: (belief, input) -> new belief.
class RevisionOperator {
 public:
  enum class Origin { Ranking, System, External };
  using Fn = std::function<Extension(const Extension&, const Extension&)>;

  RevisionOperator(Fn fn, Origin origin = Origin::External) : fn_(std::move(fn)), origin_(origin) {}

  // Total operator from world ranks. For the belief set of the ranking (its
  // minimal worlds) it picks the minimal worlds of the input; any other belief
  // set K' is revised against the ranking that puts K' first.
  static RevisionOperator from_ranking(std::vector<Rank> world_ranks, Origin origin = Origin::Ranking);

  Extension operator()(const Extension& belief, const Extension& input) const { return fn_(belief, input); }
  Origin origin() const { return origin_; }

 private:
  Fn fn_;
  Origin origin_;
};

// Worlds of finite minimal rank.
Extension minimal_worlds(const std::vector<Rank>& world_ranks, const Extension& among);

// Minimal-rank worlds of the input; throws PreconditionError unless `belief`
// is the set of minimal worlds of the ranking.
Extension revise_from_ranking(const std::vector<Rank>& world_ranks, const Extension& belief,
                              const Extension& input);

// R1..R8 over all pairs drawn from `inputs`. R6 compares two differently
// shaped formulas for each input.
Report check_agm(const RevisionOperator& op, const Extension& belief, const std::vector<Extension>& inputs,
                 const Vocabulary& vocab);

// Layers of the ranking behind `op` at `belief`: layer 0 is the belief set,
// layer i+1 is op(belief, worlds not yet ranked).
std::vector<Rank> ranking_of_operator(const RevisionOperator& op, const Extension& belief,
                                      std::size_t world_count);

// Runs keep one world forever and observe any menu sequence true there; the
// prior ranks runs by the rank of their world.
System system_from_revision(const RevisionOperator& op, const Extension& belief, const Vocabulary& vocab,
                            const std::vector<Formula>& menu, int horizon);

// The same run shape for any prior over worlds; each run inherits the
// plausibility of its world.
System static_system(const Vocabulary& vocab, const PlausibilityMeasure& world_prior, const std::vector<Formula>& menu,
                     int horizon);

struct RevOptions {
  // Observation sequences are drawn from the system's observations plus these.
  std::vector<Formula> extra_observations;
  std::optional<int> max_length;       // defaults to the horizon
  std::size_t sequence_budget = 50000;  // sequences beyond this are skipped and noted
  bool attainable_only = false;         // probe only observation sequences some run makes
  std::size_t samples = 4000;          // totality sampling for custom priors
  std::uint64_t seed = 11;
};

// REV1, REV2, REV3, REV4 and REV4' with witnesses.
Report validate_rev(const System& sys, const RevOptions& options = {});

// The prior over runs labelled with their initial world.
PlausibilityStructure characteristic_structure(const System& sys);
// Worlds of the most plausible runs starting in `e`.
Extension characteristic_bel(const System& sys, const Extension& e);
// World ranks of a ranked system: the best rank of a run starting there.
std::vector<Rank> characteristic_ranks(const System& sys);

// Throws ValidationError unless REV1..REV4 hold.
RevisionOperator revision_from_system(const System& sys, const RevOptions& options = {});

// Operator for the beliefs at s: worlds ruled out by s get one fictional rank
// below every possible world.
RevisionOperator operator_at_state(const System& sys, const LocalState& s);

struct StateRevision {
  Extension beliefs;
  bool contradicts_past = false;  // no state of the system can hold these beliefs
};

StateRevision revise_at_state(const System& sys, const LocalState& s, const Formula& phi);

// Longest consistent suffix, or <false> when the last entry is inconsistent.
LocalState consistent_suffix(const System& sys, const LocalState& e);
Extension epistemic_bel(const System& sys, const LocalState& e);

struct EpistemicOptions {
  std::size_t max_length = 3;
};

// R1'..R9' for append revision over sequences of menu formulas.
Report check_agm_epistemic(const System& sys, const std::vector<Formula>& menu,
                           const EpistemicOptions& options = {});

}  // namespace belief
