#include "belief/synthesis.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "belief/error.hpp"
#include "belief/revision.hpp"
#include "belief/update.hpp"

namespace belief {

World encode_sequence(const std::vector<World>& envs, std::size_t world_count) {
  return World{sequence_id(envs, world_count)};
}

Extension slice(const Extension& e, const Vocabulary& timestamped, int m) {
  if (!timestamped.is_timestamped()) throw PreconditionError("slicing needs a timestamped vocabulary");
  const std::size_t n = timestamped.props().size();
  const int horizon = *timestamped.horizon();
  Extension out(std::size_t{1} << n);
  const std::uint32_t digit = (1u << n) - 1;
  for (World w : e.worlds()) out.insert(World{(w.index >> ((horizon - m) * n)) & digit});
  return out;
}

StatifiedSystem statify(const System& sys) { return statify(sys, sys.horizon()); }

StatifiedSystem statify(const System& sys, int horizon) {
  const Vocabulary& vocab = sys.vocab();
  if (vocab.is_timestamped()) throw PreconditionError("the system is already over timestamped propositions");
  if (horizon < sys.horizon()) throw PreconditionError("statification horizon is below the system's horizon");
  Vocabulary star = Vocabulary::timestamped(vocab.props(), horizon);
  const std::size_t wc = vocab.world_count();

  std::vector<Run> runs;
  std::vector<std::size_t> origin;
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    const Run& run = sys.runs()[r];
    std::vector<World> envs = run.envs;
    envs.resize(static_cast<std::size_t>(horizon) + 1, envs.back());
    World code = encode_sequence(envs, wc);
    Run out{std::vector<World>(static_cast<std::size_t>(sys.horizon()) + 1, code), {}};
    for (std::size_t k = 0; k < run.obs.size(); ++k) out.obs.push_back(timestamp(run.obs[k], static_cast<int>(k) + 1));
    runs.push_back(std::move(out));
    origin.push_back(r);
  }

  Extension admissible(star.world_count());
  for (std::uint32_t code = 0; code < star.world_count(); ++code) {
    std::vector<World> envs = sequence_of(code, wc, horizon);
    if (std::all_of(envs.begin(), envs.end(), [&](World w) { return sys.admissible().contains(w); }))
      admissible.insert(World{code});
  }
  System inner(star, std::move(runs), sys.prior(), sys.horizon(), std::move(admissible));
  return StatifiedSystem{std::move(inner), std::move(origin), horizon};
}

Report verify_statification(const System& sys, const StatifiedSystem& star) {
  Report report;
  report.merge(validate_bcs(star.inner));

  RevOptions rev_options;
  rev_options.attainable_only = true;
  rev_options.samples = 500;
  Report rev = validate_rev(star.inner, rev_options);
  report.add("REV1", rev.passed("REV1"), rev.result("REV1").witness);

  Report upd3 = check_upd3(sys);
  Report upd4 = check_upd4(sys);
  auto implication = [&](const char* name, const Report& premise, const char* from, const char* to) {
    bool holds = premise.has(from) && premise.passed(from);
    bool ok = !holds || rev.passed(to);
    report.add(name, ok, ok ? "" : rev.result(to).witness);
    report.note(std::string(name) + ": " + from + (holds ? " holds" : " fails or is not checked") + ", " + to +
                (rev.passed(to) ? " holds" : " fails"));
  };
  implication("UPD3=>REV3", upd3, "UPD3", "REV3");
  implication("UPD4=>REV4'", upd4, "UPD4", "REV4'");

  // Same comparisons on corresponding run sets.
  Tally iso("PRIOR-ISO");
  const std::size_t n = sys.run_count();
  auto mapped = [&](const Bits& a) {
    Bits out(n);
    for_each_bit(a, [&](std::size_t r) { out.set(star.origin[r]); });
    return out;
  };
  auto compare_both = [&](const Bits& a, const Bits& b) {
    iso.check_lazy(star.inner.prior().compare(a, b) == sys.prior().compare(mapped(a), mapped(b)),
                   [&] { return "run sets of sizes " + std::to_string(a.count()) + " and " + std::to_string(b.count()); });
  };
  if (n <= 5) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) compare_both(subset_of(all, x, n), subset_of(all, y, n));
  } else {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution coin(0.5);
    for (int k = 0; k < 500; ++k) {
      Bits a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (coin(rng)) a.set(i);
        if (coin(rng)) b.set(i);
      }
      compare_both(a, b);
    }
  }
  iso.emit(report);

  for (const char* name : {"REV2", "REV4"})
    report.note(std::string(name) + " on the statified system: " + (rev.passed(name) ? "PASS" : "FAIL WITNESS: " + rev.result(name).witness));
  report.note("statified over times 0.." + std::to_string(star.horizon));
  return report;
}

namespace {

bool believes_at(const System& sys, const LocalState& s, const Formula& phi) {
  return bel(sys, s).subset_of(extension(phi, sys.vocab()));
}

}  // namespace

bool belief_correspondence(const System& sys, const StatifiedSystem& star, std::size_t run, int m,
                           const Formula& phi) {
  bool plain = believes_at(sys, sys.local_state({run, m}), phi);
  std::size_t twin = 0;
  while (twin < star.origin.size() && star.origin[twin] != run) ++twin;
  if (twin == star.origin.size()) throw PreconditionError("run has no statified twin");
  bool stamped = believes_at(star.inner, star.inner.local_state({twin, m}), timestamp(phi, m));
  return plain == stamped;
}

Report check_belief_correspondence(const System& sys, const StatifiedSystem& star, std::size_t depth) {
  std::vector<Formula> formulas = formulas_up_to_depth(sys.vocab(), depth);
  std::vector<std::size_t> twin(sys.run_count());
  for (std::size_t i = 0; i < star.origin.size(); ++i) twin[star.origin[i]] = i;
  Tally agree("BELIEF-CORRESPONDENCE"), projection("BELIEF-PROJECTION");
  for (int m = 0; m <= sys.horizon(); ++m)
    for (const auto& c : sys.classes(m)) {
      std::size_t r = c.runs.find_first();
      LocalState s = sys.local_state({r, m});
      LocalState s_star = star.inner.local_state({twin[r], m});
      Extension plain = bel(sys, s);
      Extension stamped = bel(star.inner, s_star);
      Extension sliced = slice(stamped, star.inner.vocab(), m);
      projection.check_lazy(sliced == plain, [&] {
        return "state " + describe(s) + " Bel=" + describe(plain, sys.vocab()) + " sliced=" + describe(sliced, sys.vocab());
      });
      for (const auto& phi : formulas) {
        bool lhs = plain.subset_of(extension(phi, sys.vocab()));
        bool rhs = stamped.subset_of(extension(timestamp(phi, m), star.inner.vocab()));
        agree.check_lazy(lhs == rhs, [&] { return "state " + describe(s) + " phi=" + phi.str(); });
      }
    }
  Report report;
  agree.emit(report);
  projection.emit(report);
  report.note("BELIEF-CORRESPONDENCE: " + std::to_string(formulas.size()) + " formulas up to depth " +
              std::to_string(depth));
  return report;
}

}  // namespace belief
