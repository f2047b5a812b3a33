#include "belief/revision.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "belief/error.hpp"

namespace belief {

namespace {

Extension conjunction_extension(const LocalState& s, const Vocabulary& vocab) {
  Extension e = Extension::all(vocab.world_count());
  for (const auto& f : s) e = e & extension(f, vocab);
  return e;
}

// Calls visit(seq) for every sequence over `alphabet` of length 0..max_length,
// shortest first. Returns false if the budget ran out.
template <class F>
bool for_each_sequence(const std::vector<Formula>& alphabet, std::size_t max_length, std::size_t budget,
                       F&& visit) {
  std::vector<LocalState> frontier{LocalState{}};
  std::size_t seen = 0;
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<LocalState> next;
    for (const auto& seq : frontier) {
      if (seen++ >= budget) return false;
      visit(seq);
      if (len < max_length)
        for (const auto& o : alphabet) {
          LocalState longer = seq;
          longer.push_back(o);
          next.push_back(std::move(longer));
        }
    }
    frontier = std::move(next);
  }
  return true;
}

std::string seq_key(const LocalState& s) {
  std::string key;
  for (const auto& f : s) key += f.str() + '\x1f';
  return key;
}

}  // namespace

Extension minimal_worlds(const std::vector<Rank>& world_ranks, const Extension& among) {
  Rank best = kInfiniteRank;
  for (World w : among.worlds()) best = std::min(best, world_ranks.at(w.index));
  Extension out(among.universe());
  if (best == kInfiniteRank) return out;
  for (World w : among.worlds())
    if (world_ranks[w.index] == best) out.insert(w);
  return out;
}

RevisionOperator RevisionOperator::from_ranking(std::vector<Rank> world_ranks, Origin origin) {
  Extension base = minimal_worlds(world_ranks, Extension::all(world_ranks.size()));
  return RevisionOperator(
      [ranks = std::move(world_ranks), base](const Extension& belief, const Extension& input) {
        if (belief == base) return minimal_worlds(ranks, input);
        Extension kept = belief & input;
        if (!kept.empty()) return kept;
        return minimal_worlds(ranks, input);
      },
      origin);
}

Extension revise_from_ranking(const std::vector<Rank>& world_ranks, const Extension& belief,
                              const Extension& input) {
  if (belief != minimal_worlds(world_ranks, Extension::all(world_ranks.size())))
    throw PreconditionError("belief set is not the set of minimal worlds of the ranking");
  return minimal_worlds(world_ranks, input);
}

Report check_agm(const RevisionOperator& op, const Extension& belief, const std::vector<Extension>& inputs,
                 const Vocabulary& vocab) {
  std::map<Extension, Extension> memo;
  auto revise = [&](const Extension& phi) -> const Extension& {
    auto it = memo.find(phi);
    if (it == memo.end()) it = memo.emplace(phi, op(belief, phi)).first;
    return it->second;
  };
  auto show = [&](const Extension& e) { return describe(e, vocab); };
  Tally r1("R1"), r2("R2"), r3("R3"), r4("R4"), r5("R5"), r6("R6"), r7("R7"), r8("R8");
  for (const auto& phi : inputs) {
    const Extension& out = revise(phi);
    auto witness = [&] { return "K=" + show(belief) + " phi=" + show(phi) + " result=" + show(out); };
    r1.check_lazy(out.universe() == vocab.world_count(), witness);
    r2.check_lazy(out.subset_of(phi), witness);
    Extension both = belief & phi;
    r3.check_lazy(both.subset_of(out), witness);
    r4.check_lazy(both.empty() || out.subset_of(both), witness);
    r5.check_lazy(out.empty() == phi.empty(), witness);
    Formula canonical = formula_of_extension(phi, vocab);
    Formula variant = alternate_formula_of_extension(phi, vocab);
    Extension a = op(belief, extension(canonical, vocab));
    Extension b = op(belief, extension(variant, vocab));
    r6.check_lazy(a == b, [&] { return canonical.str() + " vs " + variant.str(); });
  }
  for (const auto& phi : inputs) {
    const Extension& out = revise(phi);
    for (const auto& psi : inputs) {
      Extension joint = revise(phi & psi);
      Extension narrowed = out & psi;
      auto witness = [&] {
        return "K=" + show(belief) + " phi=" + show(phi) + " psi=" + show(psi) + " K*phi=" + show(out) +
               " K*(phi&psi)=" + show(joint);
      };
      r7.check_lazy(narrowed.subset_of(joint), witness);
      r8.check_lazy(narrowed.empty() || joint.subset_of(narrowed), witness);
    }
  }
  Report report;
  for (const Tally* t : {&r1, &r2, &r3, &r4, &r5, &r6, &r7, &r8}) t->emit(report);
  return report;
}

std::vector<Rank> ranking_of_operator(const RevisionOperator& op, const Extension& belief,
                                      std::size_t world_count) {
  if (belief.empty()) throw PreconditionError("belief set is inconsistent");
  std::vector<Rank> ranks(world_count, kInfiniteRank);
  for (World w : belief.worlds()) ranks[w.index] = 0;
  Extension remaining = ~belief;
  for (Rank layer = 1; !remaining.empty(); ++layer) {
    Extension next = op(belief, remaining);
    if (next.empty() || !next.subset_of(remaining))
      throw PreconditionError("operator does not pick a nonempty subset of its input at layer " +
                              std::to_string(layer));
    for (World w : next.worlds()) ranks[w.index] = layer;
    remaining = remaining - next;
  }
  return ranks;
}

System system_from_revision(const RevisionOperator& op, const Extension& belief, const Vocabulary& vocab,
                            const std::vector<Formula>& menu, int horizon) {
  if (belief.empty()) throw PreconditionError("cannot build a system for an inconsistent belief set");
  if (belief.universe() != vocab.world_count()) throw PreconditionError("belief set is not over the vocabulary");
  std::vector<Rank> ranks = ranking_of_operator(op, belief, vocab.world_count());
  return static_system(vocab, PlausibilityMeasure::ranked(std::move(ranks)), menu, horizon);
}

System static_system(const Vocabulary& vocab, const PlausibilityMeasure& world_prior, const std::vector<Formula>& menu,
                     int horizon) {
  if (world_prior.carrier_size() != vocab.world_count())
    throw PreconditionError("world prior is not over the worlds of the vocabulary");
  std::vector<Formula> alphabet;
  std::set<std::string> seen;
  for (const auto& f : menu) {
    check_atoms(f, vocab);
    if (seen.insert(f.str()).second) alphabet.push_back(f);
  }
  std::vector<Extension> exts;
  for (const auto& f : alphabet) exts.push_back(extension(f, vocab));

  std::vector<Run> runs;
  std::vector<std::size_t> run_world;
  for (World w : enumerate_worlds(vocab)) {
    std::vector<std::size_t> choices;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (exts[i].contains(w)) choices.push_back(i);
    if (choices.empty() && horizon > 0)
      throw PreconditionError("no menu formula is true at world " + vocab.world_name(w));
    std::vector<std::size_t> pick(static_cast<std::size_t>(horizon), 0);
    while (true) {
      Run r{std::vector<World>(static_cast<std::size_t>(horizon) + 1, w), {}};
      for (auto i : pick) r.obs.push_back(alphabet[choices[i]]);
      runs.push_back(std::move(r));
      run_world.push_back(w.index);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  PlausibilityMeasure prior = world_prior.restrict(run_world);
  return System(vocab, std::move(runs), std::move(prior), horizon);
}

// ---------------------------------------------------------------------------

Report validate_rev(const System& sys, const RevOptions& options) {
  const Vocabulary& vocab = sys.vocab();
  const auto& prior = sys.prior();
  const std::size_t n = sys.run_count();
  Report report;

  Tally rev1("REV1");
  for (std::size_t r = 0; r < n; ++r) {
    const auto& envs = sys.runs()[r].envs;
    for (std::size_t t = 1; t < envs.size(); ++t)
      rev1.check_lazy(envs[t] == envs[0], [&] { return describe_run(sys, r) + " changes at time " + std::to_string(t); });
  }
  rev1.emit(report);

  Tally rev2("REV2");
  switch (prior.kind()) {
    case PlausibilityMeasure::Kind::Ranked:
      rev2.check(true, "");
      break;
    case PlausibilityMeasure::Kind::Preferential:
    case PlausibilityMeasure::Kind::Custom: {
      std::mt19937_64 rng(options.seed);
      auto single = [&](std::size_t i) { return make_bits(n, {i}); };
      if (n <= 1000) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            rev2.check_lazy(prior.compare(single(i), single(j)) != Ordering::Incomparable, [&] {
              return "runs " + std::to_string(i) + " and " + std::to_string(j) + " are incomparable";
            });
      }
      std::bernoulli_distribution coin(0.5);
      for (std::size_t k = 0; k < options.samples && n > 0; ++k) {
        Bits a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (coin(rng)) a.set(i);
          if (coin(rng)) b.set(i);
        }
        Ordering o = prior.compare(a, b);
        Bits u = a | b;
        bool total = o != Ordering::Incomparable;
        bool max_law = total && prior.compare(u, o == Ordering::Less ? b : a) == Ordering::Equal;
        rev2.check_lazy(total && max_law, [&] {
          return std::string(total ? "union of two run sets is not their maximum" : "two run sets are incomparable");
        });
      }
      break;
    }
  }
  rev2.emit(report);

  Tally rev3("REV3");
  for (World w : sys.admissible().worlds()) {
    Bits runs = sys.runs_where(Extension::of(vocab.world_count(), {w.index}), 0);
    rev3.check_lazy(!prior.is_bottom(runs), [&] { return "world " + vocab.world_name(w) + " has bottom plausibility"; });
  }
  rev3.emit(report);

  // Probe formulas as extensions, deduplicated.
  std::set<Extension> probe_set;
  const std::size_t wc = vocab.world_count();
  probe_set.insert(Extension::all(wc));
  probe_set.insert(Extension(wc));
  for (std::size_t p = 0; p < vocab.atom_count(); ++p) {
    Extension e = extension(Formula::atom(vocab.atom_at(p)), vocab);
    probe_set.insert(e);
    probe_set.insert(~e);
  }
  std::vector<Formula> alphabet = sys.observations();
  for (const auto& f : options.extra_observations) {
    check_atoms(f, vocab);
    if (!sys.observation_id(f)) alphabet.push_back(f);
  }
  for (const auto& f : alphabet) probe_set.insert(extension(f, vocab));
  if (wc <= 16)
    for (std::uint32_t w = 0; w < wc; ++w) probe_set.insert(Extension::of(wc, {w}));
  if (wc <= 4)
    for (const auto& e : all_subsets(Extension::all(wc))) probe_set.insert(e);
  std::vector<Extension> probes(probe_set.begin(), probe_set.end());
  std::vector<Bits> initial;
  for (const auto& e : probes) initial.push_back(sys.runs_where(e, 0));

  const bool ranked = prior.kind() == PlausibilityMeasure::Kind::Ranked;
  Tally rev4("REV4"), rev4w("REV4'");
  std::size_t max_length = static_cast<std::size_t>(options.max_length.value_or(sys.horizon()));
  max_length = std::min<std::size_t>(max_length, static_cast<std::size_t>(sys.horizon()));
  std::vector<Bits> left(probes.size()), right(probes.size());
  std::vector<Rank> lr(probes.size()), rr(probes.size());
  auto visit = [&](const LocalState& seq) {
    Bits observing = sys.runs_with(seq);
    Bits conj = sys.runs_where(conjunction_extension(seq, vocab), 0);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      left[i] = initial[i] & observing;
      right[i] = initial[i] & conj;
      if (ranked) {
        lr[i] = prior.rank_of(left[i]);
        rr[i] = prior.rank_of(right[i]);
      }
    }
    auto geq = [&](const std::vector<Bits>& side, const std::vector<Rank>& rk, std::size_t i, std::size_t j) {
      return ranked ? rk[i] <= rk[j] : prior.at_least(side[i], side[j]);
    };
    for (std::size_t i = 0; i < probes.size(); ++i) {
      bool positive = ranked ? lr[i] != kInfiniteRank : !prior.is_bottom(left[i]);
      for (std::size_t j = 0; j < probes.size(); ++j) {
        bool ok = geq(left, lr, i, j) == geq(right, rr, i, j);
        auto witness = [&] {
          return "obs " + describe(seq) + " phi=" + describe(probes[i], vocab) + " psi=" +
                 describe(probes[j], vocab);
        };
        rev4.check_lazy(ok, witness);
        if (positive) rev4w.check_lazy(ok, witness);
      }
    }
  };
  bool whole = true;
  if (options.attainable_only) {
    std::size_t seen = 0;
    for (int t = 0; t <= static_cast<int>(max_length) && whole; ++t)
      for (const auto& seq : sys.attainable_states(t)) {
        if (seen++ >= options.sequence_budget) {
          whole = false;
          break;
        }
        visit(seq);
      }
  } else {
    whole = for_each_sequence(alphabet, max_length, options.sequence_budget, visit);
  }
  rev4.emit(report);
  rev4w.emit(report);
  report.note("REV4: observation sequences up to length " + std::to_string(max_length) + " over " +
              std::to_string(alphabet.size()) + " observable formulas, " + std::to_string(probes.size()) +
              " probe formulas");
  if (!whole) report.note("REV4: sequence budget reached, longer sequences unchecked");
  return report;
}

PlausibilityStructure characteristic_structure(const System& sys) {
  std::vector<World> labels;
  for (const auto& r : sys.runs()) labels.push_back(r.envs.front());
  return PlausibilityStructure{sys.vocab(), sys.prior(), std::move(labels)};
}

Extension characteristic_bel(const System& sys, const Extension& e) {
  Bits runs = sys.runs_where(e, 0);
  Extension out(sys.vocab().world_count());
  const auto& prior = sys.prior();
  if (runs.none() || prior.is_bottom(runs)) return out;
  if (prior.kind() != PlausibilityMeasure::Kind::Custom) return sys.worlds_at(prior.most_plausible(runs), 0);
  for (World w : sys.worlds_at(runs, 0).worlds()) {
    Bits here = sys.runs_where(Extension::of(out.universe(), {w.index}), 0) & runs;
    if (!prior.exceeds(runs - here, here)) out.insert(w);
  }
  return out;
}

std::vector<Rank> characteristic_ranks(const System& sys) {
  if (sys.prior().kind() != PlausibilityMeasure::Kind::Ranked)
    throw PreconditionError("characteristic ranks need a ranked prior");
  std::vector<Rank> ranks(sys.vocab().world_count(), kInfiniteRank);
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    auto& slot = ranks[sys.runs()[r].envs.front().index];
    slot = std::min(slot, sys.prior().rank(r));
  }
  return ranks;
}

RevisionOperator revision_from_system(const System& sys, const RevOptions& options) {
  Report report = validate_rev(sys, options);
  for (const char* name : {"REV1", "REV2", "REV3", "REV4"})
    if (!report.passed(name))
      throw ValidationError(std::string(name) + " fails: " + report.result(name).witness);
  return RevisionOperator::from_ranking(characteristic_ranks(sys), RevisionOperator::Origin::System);
}

RevisionOperator operator_at_state(const System& sys, const LocalState& s) {
  std::vector<Rank> base = characteristic_ranks(sys);
  Extension past = conjunction_extension(s, sys.vocab());
  Rank worst = 0;
  for (Rank r : base)
    if (r != kInfiniteRank) worst = std::max(worst, r);
  std::vector<Rank> ranks(base.size());
  for (std::uint32_t w = 0; w < base.size(); ++w)
    ranks[w] = past.contains(World{w}) && base[w] != kInfiniteRank ? base[w] : worst + 1;
  return RevisionOperator::from_ranking(std::move(ranks), RevisionOperator::Origin::System);
}

StateRevision revise_at_state(const System& sys, const LocalState& s, const Formula& phi) {
  if (!sys.attainable(s)) throw PreconditionError("local state " + describe(s) + " is not attainable");
  Extension input = extension(phi, sys.vocab());
  Extension past = conjunction_extension(s, sys.vocab());
  if (!sys.consistent(past & input)) return {Extension(sys.vocab().world_count()), true};
  LocalState longer = s;
  longer.push_back(phi);
  if (sys.attainable(longer)) return {bel(sys, longer), false};
  return {operator_at_state(sys, s)(bel(sys, s), input), false};
}

LocalState consistent_suffix(const System& sys, const LocalState& e) {
  if (e.empty()) return {};
  const Vocabulary& vocab = sys.vocab();
  if (!sys.consistent(extension(e.back(), vocab))) return {Formula::falsity()};
  Extension acc = Extension::all(vocab.world_count());
  std::size_t k = e.size();
  while (k > 0) {
    Extension next = acc & extension(e[k - 1], vocab);
    if (!sys.consistent(next)) break;
    acc = next;
    --k;
  }
  return LocalState(e.begin() + static_cast<std::ptrdiff_t>(k), e.end());
}

Extension epistemic_bel(const System& sys, const LocalState& e) {
  if (e.size() <= static_cast<std::size_t>(sys.horizon()) && sys.attainable(e)) return bel(sys, e);
  LocalState f = consistent_suffix(sys, e);
  if (f.size() <= static_cast<std::size_t>(sys.horizon()) && sys.attainable(f)) return bel(sys, f);
  // Off-menu or too long for the horizon: condition the characteristic
  // structure on the conjunction, as the ranked system would.
  return characteristic_bel(sys, conjunction_extension(f, sys.vocab()) & sys.admissible());
}

Report check_agm_epistemic(const System& sys, const std::vector<Formula>& menu, const EpistemicOptions& options) {
  const Vocabulary& vocab = sys.vocab();
  std::map<std::string, Extension> memo;
  auto belief = [&](const LocalState& s) -> const Extension& {
    std::string key = seq_key(s);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, epistemic_bel(sys, s)).first;
    return it->second;
  };
  std::vector<Extension> ext;
  for (const auto& f : menu) ext.push_back(extension(f, vocab));
  auto representative = [&](const Extension& e) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < ext.size(); ++i)
      if (ext[i] == e) return i;
    return std::nullopt;
  };
  auto push = [](LocalState s, const Formula& f) {
    s.push_back(f);
    return s;
  };

  Tally r1("R1'"), r2("R2'"), r3("R3'"), r4("R4'"), r5("R5'"), r6("R6'"), r7("R7'"), r8("R8'"), r9("R9'");
  std::size_t skipped = 0, variants = 0;
  if (options.max_length == 0) throw PreconditionError("epistemic check needs sequences of length at least 1");
  for_each_sequence(menu, options.max_length - 1, ~std::size_t{0}, [&](const LocalState& e) {
    const Extension& before = belief(e);
    for (std::size_t i = 0; i < menu.size(); ++i) {
      LocalState ephi = push(e, menu[i]);
      const Extension& after = belief(ephi);
      auto witness = [&] { return "E=" + describe(e) + " phi=" + menu[i].str() + " Bel=" + describe(after, vocab); };
      r1.check(true, "");
      r2.check_lazy(after.subset_of(ext[i]), witness);
      Extension both = before & ext[i];
      r3.check_lazy(both.subset_of(after), witness);
      r4.check_lazy(both.empty() || after.subset_of(both), witness);
      r5.check_lazy(after.empty() == !sys.consistent(ext[i]), witness);
      for (std::size_t j = 0; j < menu.size(); ++j) {
        if (j != i && ext[j] == ext[i] && !(menu[j] == menu[i])) {
          ++variants;
          r6.check_lazy(belief(push(e, menu[j])) == after,
                        [&] { return "E=" + describe(e) + " " + menu[i].str() + " vs " + menu[j].str(); });
        }
        auto rep = representative(ext[i] & ext[j]);
        if (!rep) {
          ++skipped;
          continue;
        }
        const Extension& joint = belief(push(e, menu[*rep]));
        Extension narrowed = after & ext[j];
        auto w2 = [&] {
          return "E=" + describe(e) + " phi=" + menu[i].str() + " psi=" + menu[j].str() + " joint=" +
                 describe(joint, vocab);
        };
        r7.check_lazy(narrowed.subset_of(joint), w2);
        r8.check_lazy(narrowed.empty() || joint.subset_of(narrowed), w2);
        if (e.size() + 2 <= options.max_length && sys.consistent(ext[i] & ext[j]))
          r9.check_lazy(belief(push(ephi, menu[j])) == joint, w2);
      }
    }
  });
  Report report;
  for (const Tally* t : {&r1, &r2, &r3, &r4, &r5, &r6, &r7, &r8, &r9}) t->emit(report);
  if (variants == 0) report.note("R6': the menu has no syntactic variants, so R6' is vacuous");
  if (skipped > 0)
    report.note("R7'/R8'/R9': " + std::to_string(skipped) + " pairs skipped, conjunction not in the menu");
  return report;
}

}  // namespace belief
