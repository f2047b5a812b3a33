#pragma once

#include <cstddef>
#include <vector>

#include "belief/prop.hpp"
#include "belief/report.hpp"
#include "belief/system.hpp"

namespace belief {

// A system whose environment state at every time is the whole original
// environment sequence, written over timestamped propositions p@0..p@H.
// Run i of `inner` comes from run origin[i] of the source system, and the
// prior is carried over unchanged.
struct StatifiedSystem {
  System inner;
  std::vector<std::size_t> origin;
  int horizon = 0;
};

// World over the timestamped vocabulary that encodes an environment sequence.
World encode_sequence(const std::vector<World>& envs, std::size_t world_count);
// Worlds at time m of the sequences in `e`.
Extension slice(const Extension& e, const Vocabulary& timestamped, int m);

// Throws PreconditionError for a timestamped source or a horizon below the
// system's.
StatifiedSystem statify(const System& sys, int horizon);
StatifiedSystem statify(const System& sys);

// BCS1..BCS5 and REV1 on the statified system, the implications from UPD3 and
// UPD4 of the source, and prior preservation under the run bijection.
Report verify_statification(const System& sys, const StatifiedSystem& star);

// (I,r,m) |= B phi iff (I*,r*,m) |= B timestamp(phi, m).
bool belief_correspondence(const System& sys, const StatifiedSystem& star, std::size_t run, int m,
                           const Formula& phi);

// The correspondence over every point and every formula up to `depth`, plus a
// check that the statified beliefs sliced at m are the original ones.
Report check_belief_correspondence(const System& sys, const StatifiedSystem& star, std::size_t depth = 2);

}  // namespace belief
