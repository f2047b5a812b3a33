#include "belief/update.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "belief/error.hpp"

namespace belief {

DistanceOrder::DistanceOrder(std::vector<std::string> names,
                             const std::vector<std::pair<Distance, Distance>>& less)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (n == 0) throw PreconditionError("a distance order needs the zero value");
  std::vector<Bits> rel(n, Bits(n));  // rel[a] = values above a
  for (Distance v = 1; v < n; ++v) rel[0].set(v);
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw PreconditionError("distance value out of range");
    rel[a].set(b);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (rel[a].test(k)) rel[a] |= rel[k];
  below_.assign(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (rel[a].test(a)) throw PreconditionError("distance order is cyclic at " + names_[a]);
    for_each_bit(rel[a], [&](std::size_t b) { below_[b].set(a); });
  }
}

DistanceOrder DistanceOrder::chain(std::size_t count) {
  std::vector<std::string> names;
  std::vector<std::pair<Distance, Distance>> less;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(std::to_string(i));
    if (i + 1 < count) less.emplace_back(static_cast<Distance>(i), static_cast<Distance>(i + 1));
  }
  return DistanceOrder(std::move(names), less);
}

std::optional<Distance> DistanceOrder::find(const std::string& name) const {
  for (Distance d = 0; d < names_.size(); ++d)
    if (names_[d] == name) return d;
  return std::nullopt;
}

bool DistanceOrder::less(Distance a, Distance b) const {
  if (a == kImpossible) return false;
  if (b == kImpossible) return true;
  return below_.at(b).test(a);
}

UpdateStructure::UpdateStructure(Vocabulary vocab, DistanceOrder order, std::vector<Distance> table)
    : vocab_(std::move(vocab)), order_(std::move(order)), table_(std::move(table)) {
  const std::size_t w = world_count();
  if (table_.size() != w * w) throw PreconditionError("distance table does not cover every pair of worlds");
  for (std::uint32_t a = 0; a < w; ++a)
    for (std::uint32_t b = 0; b < w; ++b) {
      Distance d = distance(World{a}, World{b});
      std::string pair = vocab_.world_name(World{a}) + "," + vocab_.world_name(World{b});
      if (d != kImpossible && d >= order_.size()) throw PreconditionError("unknown distance at " + pair);
      if (a == b && d != 0) throw PreconditionError("nonzero self distance at " + pair);
      if (a != b && d == 0) throw PreconditionError("zero distance between distinct worlds " + pair);
    }
}

UpdateStructure UpdateStructure::hamming(Vocabulary vocab) {
  const std::size_t w = vocab.world_count();
  std::vector<Distance> table(w * w);
  for (std::uint32_t a = 0; a < w; ++a)
    for (std::uint32_t b = 0; b < w; ++b) table[a * w + b] = static_cast<Distance>(__builtin_popcount(a ^ b));
  DistanceOrder order = DistanceOrder::chain(vocab.atom_count() + 1);
  return UpdateStructure(std::move(vocab), std::move(order), std::move(table));
}

bool UpdateStructure::has_impossible() const {
  return std::find(table_.begin(), table_.end(), kImpossible) != table_.end();
}

Extension min_u(const UpdateStructure& u, const Extension& a, const Extension& b) {
  Extension out(u.world_count());
  std::vector<World> targets = b.worlds();
  for (World w : targets)
    for (World from : a.worlds()) {
      if (!u.possible(from, w)) continue;
      bool minimal = std::none_of(targets.begin(), targets.end(), [&](World other) { return u.closer(from, other, w); });
      if (minimal) {
        out.insert(w);
        break;
      }
    }
  return out;
}

Extension km_update(const UpdateStructure& u, const Extension& mu, const Extension& phi) { return min_u(u, mu, phi); }

Report check_km(const UpdateOperator& op, const std::vector<Extension>& inputs, const Vocabulary& vocab) {
  std::map<std::pair<Extension, Extension>, Extension> memo;
  auto upd = [&](const Extension& mu, const Extension& phi) -> const Extension& {
    auto key = std::make_pair(mu, phi);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, op(mu, phi)).first;
    return it->second;
  };
  auto show = [&](const Extension& e) { return describe(e, vocab); };
  Tally u1("U1"), u2("U2"), u3("U3"), u4("U4"), u5("U5"), u6("U6"), u7("U7"), u8("U8");
  for (const auto& mu : inputs)
    for (const auto& phi : inputs) {
      const Extension& out = upd(mu, phi);
      auto witness = [&] { return "mu=" + show(mu) + " phi=" + show(phi) + " result=" + show(out); };
      u1.check_lazy(out.subset_of(phi), witness);
      u2.check_lazy(!mu.subset_of(phi) || out == mu, witness);
      u3.check_lazy(out.empty() == (mu.empty() || phi.empty()), witness);
      Extension variant = op(extension(alternate_formula_of_extension(mu, vocab), vocab),
                             extension(alternate_formula_of_extension(phi, vocab), vocab));
      u4.check_lazy(variant == out, witness);
      for (const auto& psi : inputs) {
        auto w3 = [&] { return "mu=" + show(mu) + " phi=" + show(phi) + " psi=" + show(psi); };
        u5.check_lazy((out & psi).subset_of(upd(mu, phi & psi)), w3);
        const Extension& other = upd(mu, psi);
        if (out.subset_of(psi) && other.subset_of(phi)) u6.check_lazy(out == other, w3);
        if (mu.size() == 1) u7.check_lazy((out & other).subset_of(upd(mu, phi | psi)), w3);
        // psi plays the second disjunct of the belief here.
        u8.check_lazy(upd(mu | psi, phi) == (out | upd(psi, phi)), w3);
      }
    }
  Report report;
  for (const Tally* t : {&u1, &u2, &u3, &u4, &u5, &u6, &u7, &u8}) t->emit(report);
  return report;
}

// ---------------------------------------------------------------------------

std::size_t sequence_count(std::size_t world_count, int horizon) {
  std::size_t count = 1;
  for (int t = 0; t <= horizon; ++t) {
    count *= world_count;
    if (count > kMaxSequences)
      throw BudgetExceeded("more than " + std::to_string(kMaxSequences) + " environment sequences");
  }
  return count;
}

std::uint32_t sequence_id(const std::vector<World>& envs, std::size_t world_count) {
  std::uint32_t id = 0;
  for (World w : envs) id = static_cast<std::uint32_t>(id * world_count + w.index);
  return id;
}

std::vector<World> sequence_of(std::uint32_t id, std::size_t world_count, int horizon) {
  std::vector<World> envs(static_cast<std::size_t>(horizon) + 1);
  for (int t = horizon; t >= 0; --t) {
    envs[t] = World{static_cast<std::uint32_t>(id % world_count)};
    id /= static_cast<std::uint32_t>(world_count);
  }
  return envs;
}

bool lex_prefers(const UpdateStructure& u, const std::vector<World>& a, const std::vector<World>& b) {
  std::size_t len = std::min(a.size(), b.size());
  if (len == 0 || a[0] != b[0]) return false;
  for (std::size_t t = 1; t < len; ++t)
    if (a[t] != b[t]) return u.order().less(u.distance(a[t - 1], a[t]), u.distance(b[t - 1], b[t]));
  return false;
}

bool feasible(const UpdateStructure& u, const std::vector<World>& envs) {
  for (std::size_t t = 1; t < envs.size(); ++t)
    if (!u.possible(envs[t - 1], envs[t])) return false;
  return true;
}

std::vector<Bits> lex_preference(const UpdateStructure& u, int horizon) {
  const std::size_t w = u.world_count();
  const std::size_t n = sequence_count(w, horizon);
  std::vector<std::vector<World>> seqs;
  std::vector<bool> ok;
  for (std::uint32_t id = 0; id < n; ++id) {
    seqs.push_back(sequence_of(id, w, horizon));
    ok.push_back(feasible(u, seqs.back()));
  }
  std::vector<Bits> preferred(n, Bits(n));
  for (std::uint32_t b = 0; b < n; ++b) {
    if (!ok[b]) continue;
    // Only sequences sharing the initial world can be compared.
    std::uint32_t block = static_cast<std::uint32_t>(n / w);
    std::uint32_t first = b / block * block;
    for (std::uint32_t a = first; a < first + block; ++a)
      if (ok[a] && lex_prefers(u, seqs[a], seqs[b])) preferred[b].set(a);
  }
  return preferred;
}

PlausibilityMeasure lex_prior(const UpdateStructure& u, int horizon, const std::vector<Run>& runs) {
  std::vector<std::uint32_t> key_of;
  key_of.reserve(runs.size());
  for (const auto& r : runs) {
    if (r.envs.size() != static_cast<std::size_t>(horizon) + 1) throw PreconditionError("run length does not match the horizon");
    key_of.push_back(sequence_id(r.envs, u.world_count()));
  }
  return PlausibilityMeasure::preferential(std::move(key_of), lex_preference(u, horizon));
}

System system_from_update(const UpdateStructure& u, int horizon, const std::vector<Formula>& menu) {
  const Vocabulary& vocab = u.vocab();
  std::vector<Formula> alphabet;
  std::vector<Extension> exts;
  std::set<std::string> seen;
  for (const auto& f : menu) {
    check_atoms(f, vocab);
    Extension e = extension(f, vocab);
    if (e.empty()) throw PreconditionError("menu formula " + f.str() + " is inconsistent");
    if (seen.insert(f.str()).second) {
      alphabet.push_back(f);
      exts.push_back(std::move(e));
    }
  }
  std::vector<std::vector<std::size_t>> choices(u.world_count());
  for (World w : enumerate_worlds(vocab)) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (exts[i].contains(w)) choices[w.index].push_back(i);
    if (choices[w.index].empty() && horizon > 0)
      throw PreconditionError("no menu formula is true at world " + vocab.world_name(w));
  }
  const std::size_t n = sequence_count(u.world_count(), horizon);
  std::vector<Run> runs;
  for (std::uint32_t id = 0; id < n; ++id) {
    std::vector<World> envs = sequence_of(id, u.world_count(), horizon);
    if (!feasible(u, envs)) continue;
    std::vector<std::size_t> pick(static_cast<std::size_t>(horizon), 0);
    while (true) {
      Run r{envs, {}};
      for (int t = 1; t <= horizon; ++t) r.obs.push_back(alphabet[choices[envs[t].index][pick[t - 1]]]);
      runs.push_back(std::move(r));
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[envs[k + 1].index].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  PlausibilityMeasure prior = lex_prior(u, horizon, runs);
  return System(vocab, std::move(runs), std::move(prior), horizon);
}

// ---------------------------------------------------------------------------

namespace {

// Environment sequence behind each class key of a preferential prior.
struct KeyedHistories {
  PlausibilityMeasure classes;
  std::vector<std::optional<std::vector<World>>> envs;
  Bits present;
};

KeyedHistories keyed_histories(const System& sys) {
  const auto& prior = sys.prior();
  if (prior.kind() != PlausibilityMeasure::Kind::Preferential)
    throw PreconditionError("prefix criteria need a preferential prior over environment sequences");
  KeyedHistories out{prior.key_measure(), {}, {}};
  const std::size_t k = out.classes.carrier_size();
  out.envs.assign(k, std::nullopt);
  out.present = Bits(k);
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    std::uint32_t key = prior.key(r);
    auto& slot = out.envs[key];
    if (!slot) {
      slot = sys.runs()[r].envs;
      out.present.set(key);
    } else if (*slot != sys.runs()[r].envs) {
      throw PreconditionError("prior classes mix different environment sequences");
    }
  }
  return out;
}

std::uint32_t prefix_id(const std::vector<World>& envs, std::size_t length, std::size_t world_count) {
  return sequence_id(std::vector<World>(envs.begin(), envs.begin() + static_cast<std::ptrdiff_t>(length)), world_count);
}

// Cells of the given prefix length, restricted to `within`.
std::map<std::uint32_t, Bits> cells(const KeyedHistories& h, const Bits& within, std::size_t length,
                                    std::size_t world_count) {
  std::map<std::uint32_t, Bits> out;
  for_each_bit(within, [&](std::size_t key) {
    auto [it, fresh] = out.try_emplace(prefix_id(*h.envs[key], length, world_count), Bits(within.size()));
    it->second.set(key);
  });
  return out;
}

Extension states_with(const System& sys, const KeyedHistories& h, const LocalState& s) {
  Extension out(sys.vocab().world_count());
  const std::size_t m = s.size();
  if (m > static_cast<std::size_t>(sys.horizon()) || !sys.attainable(s)) return out;
  std::vector<Extension> exts;
  for (const auto& f : s) exts.push_back(extension(f, sys.vocab()));
  Bits event(h.present.size());
  for_each_bit(h.present, [&](std::size_t key) {
    const auto& envs = *h.envs[key];
    for (std::size_t i = 1; i <= m; ++i)
      if (!exts[i - 1].contains(envs[i])) return;
    event.set(key);
  });
  for (const auto& [prefix, cell] : cells(h, event, m + 1, out.universe())) {
    if (h.classes.compare(cell, event - cell) != Ordering::Less) out.insert((*h.envs[cell.find_first()])[m]);
  }
  return out;
}

}  // namespace

Extension states(const System& sys, const LocalState& s) { return states_with(sys, keyed_histories(sys), s); }

Report check_update_correspondence(const System& sys, const UpdateStructure& u, const std::vector<Formula>& menu) {
  KeyedHistories h = keyed_histories(sys);
  std::map<std::string, Extension> memo;
  auto st = [&](const LocalState& s) -> const Extension& {
    std::string key;
    for (const auto& f : s) key += f.str() + '\x1f';
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, states_with(sys, h, s)).first;
    return it->second;
  };
  const Vocabulary& vocab = sys.vocab();
  Tally change("STATES-CHANGE"), agree("STATES-BEL");
  for (int t = 0; t <= sys.horizon(); ++t)
    for (const auto& c : sys.classes(t)) {
      LocalState s = sys.state_of(c);
      const Extension& now = st(s);
      Extension believed = bel(sys, s);
      agree.check_lazy(now == believed, [&] {
        return "state " + describe(s) + " States=" + describe(now, vocab) + " Bel=" + describe(believed, vocab);
      });
      if (t == sys.horizon()) continue;
      for (const auto& psi : menu) {
        LocalState next = s;
        next.push_back(psi);
        const Extension& after = st(next);
        Extension expected = min_u(u, now, extension(psi, vocab));
        change.check_lazy(after == expected, [&] {
          return "state " + describe(s) + " psi=" + psi.str() + " States=" + describe(after, vocab) +
                 " min_U=" + describe(expected, vocab);
        });
      }
    }
  Report report;
  change.emit(report);
  agree.emit(report);
  return report;
}

bool sufficient_information(const UpdateStructure& u, World w, World w2, const Formula& phi) {
  Extension e = extension(phi, u.vocab());
  if (!e.contains(w2)) throw PreconditionError("the new world does not satisfy the observation");
  for (World other : e.worlds())
    if (u.closer(w, other, w2)) return false;
  return true;
}

Report check_correctness_preservation(const System& sys, const UpdateStructure& u) {
  KeyedHistories h = keyed_histories(sys);
  std::map<std::pair<int, std::size_t>, Extension> memo;
  auto st = [&](int t, std::size_t cls) -> const Extension& {
    auto key = std::make_pair(t, cls);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, states_with(sys, h, sys.state_of(sys.classes(t)[cls]))).first;
    return it->second;
  };
  Tally tally("CORRECTNESS");
  std::size_t premises = 0;
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    const Run& run = sys.runs()[r];
    for (int m = 0; m < sys.horizon(); ++m) {
      if (!st(m, sys.class_of(r, m)).contains(run.envs[m])) continue;
      if (!sufficient_information(u, run.envs[m], run.envs[m + 1], run.obs[m])) continue;
      ++premises;
      tally.check_lazy(st(m + 1, sys.class_of(r, m + 1)).contains(run.envs[m + 1]),
                       [&] { return describe_run(sys, r) + " at time " + std::to_string(m + 1); });
    }
  }
  Report report;
  tally.emit(report);
  report.note("CORRECTNESS: " + std::to_string(premises) + " points meet the premise");
  return report;
}

// ---------------------------------------------------------------------------

Report check_upd2(const System& sys, const UpdateStructure& u, const UpdOptions& options) {
  KeyedHistories h = keyed_histories(sys);
  const std::size_t wc = sys.vocab().world_count();
  std::mt19937_64 rng(options.seed);
  Tally dist("UPD2-DISTANCE"), prefix("UPD2-PREFIX");
  bool sampled = false;
  for (int n = 0; n <= sys.horizon(); ++n) {
    auto cs = cells(h, h.present, static_cast<std::size_t>(n) + 1, wc);
    std::vector<std::pair<std::vector<World>, Bits>> list;
    for (auto& [id, cell] : cs) {
      const auto& envs = *h.envs[cell.find_first()];
      list.emplace_back(std::vector<World>(envs.begin(), envs.begin() + n + 1), cell);
    }
    auto check_pair = [&](std::size_t i, std::size_t j) {
      bool expected = lex_prefers(u, list[j].first, list[i].first);
      bool actual = h.classes.compare(list[i].second, list[j].second) == Ordering::Less;
      dist.check_lazy(expected == actual, [&] {
        std::string a, b;
        for (World w : list[i].first) a += sys.vocab().world_name(w) + " ";
        for (World w : list[j].first) b += sys.vocab().world_name(w) + " ";
        return "cells [" + a + "] vs [" + b + "] " + (actual ? "ordered" : "unordered");
      });
    };
    if (list.size() * list.size() <= options.pair_budget) {
      for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = 0; j < list.size(); ++j) check_pair(i, j);
    } else {
      sampled = true;
      std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
      for (std::size_t k = 0; k < options.pair_budget; ++k) check_pair(pick(rng), pick(rng));
    }

    // Events fixed by the state at each time 0..n, compared two ways.
    std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << wc) - 1);
    auto event = [&](const std::vector<Extension>& phis) {
      Bits e(h.present.size());
      for_each_bit(h.present, [&](std::size_t key) {
        const auto& envs = *h.envs[key];
        for (int i = 0; i <= n; ++i)
          if (!phis[i].contains(envs[i])) return;
        e.set(key);
      });
      return e;
    };
    auto random_phis = [&] {
      std::vector<Extension> phis;
      for (int i = 0; i <= n; ++i) {
        Bits b(wc);
        std::uint64_t m = mask(rng);
        for (std::size_t w = 0; w < wc; ++w)
          if (m >> w & 1u) b.set(w);
        phis.emplace_back(std::move(b));
      }
      return phis;
    };
    for (std::size_t k = 0; k < options.samples; ++k) {
      Bits a = event(random_phis());
      Bits b = event(random_phis());
      bool direct = h.classes.at_least(a, b);
      bool by_cells = true;
      auto a_cells = cells(h, a, static_cast<std::size_t>(n) + 1, wc);
      for (const auto& [id, cell] : cells(h, b - a, static_cast<std::size_t>(n) + 1, wc)) {
        bool beaten = std::any_of(a_cells.begin(), a_cells.end(),
                                  [&](const auto& other) { return h.classes.exceeds(other.second, cell); });
        if (!beaten) {
          by_cells = false;
          break;
        }
      }
      prefix.check_lazy(direct == by_cells, [&] { return "time " + std::to_string(n) + " event pair " + std::to_string(k); });
    }
  }
  Report report;
  dist.emit(report);
  prefix.emit(report);
  if (sampled) report.note("UPD2-DISTANCE: cell pairs sampled past the budget");
  return report;
}

Report check_upd3(const System& sys, const UpdOptions& options) {
  Report report;
  if (options.relaxed) {
    report.note("UPD3: dropped for impossible transitions");
    return report;
  }
  const auto& prior = sys.prior();
  const std::size_t wc = sys.vocab().world_count();
  std::set<std::uint32_t> covered;
  for (std::size_t r = 0; r < sys.run_count(); ++r)
    if (!prior.is_bottom(make_bits(sys.run_count(), {r}))) covered.insert(sequence_id(sys.runs()[r].envs, wc));
  Tally tally("UPD3");
  std::vector<World> adm = sys.admissible().worlds();
  std::size_t total = sequence_count(adm.size(), sys.horizon());
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<World> envs = sequence_of(static_cast<std::uint32_t>(i), adm.size(), sys.horizon());
    for (auto& w : envs) w = adm[w.index];
    tally.check_lazy(covered.count(sequence_id(envs, wc)) > 0, [&] {
      std::string seq;
      for (World w : envs) seq += sys.vocab().world_name(w) + " ";
      return "state sequence [" + seq + "] has bottom plausibility";
    });
  }
  tally.emit(report);
  return report;
}

Report check_upd4(const System& sys, const UpdOptions& options) {
  const Vocabulary& vocab = sys.vocab();
  const auto& prior = sys.prior();
  const std::size_t wc = vocab.world_count();
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << wc) - 1);
  auto random_ext = [&] {
    Bits b(wc);
    std::uint64_t m = mask(rng);
    for (std::size_t w = 0; w < wc; ++w)
      if (m >> w & 1u) b.set(w);
    return Extension(std::move(b));
  };
  std::vector<Bits> where_cache;
  Tally strict("UPD4"), weak("UPD4'");
  const auto& alphabet = sys.observations();
  std::vector<Extension> obs_ext;
  for (const auto& o : alphabet) obs_ext.push_back(extension(o, vocab));

  // Observation sequences of length 0..H-1, breadth first.
  std::vector<std::vector<std::size_t>> seqs{{}};
  for (std::size_t i = 0; i < seqs.size() && seqs.size() < 2000; ++i)
    if (seqs[i].size() + 1 < static_cast<std::size_t>(sys.horizon()))
      for (std::size_t o = 0; o < alphabet.size(); ++o) {
        auto longer = seqs[i];
        longer.push_back(o);
        seqs.push_back(std::move(longer));
      }
  const std::size_t per_sequence = std::max<std::size_t>(1, options.samples / 8);
  for (const auto& seq : seqs) {
    const std::size_t m = seq.size();
    if (m + 1 > static_cast<std::size_t>(sys.horizon())) continue;
    LocalState s;
    for (auto o : seq) s.push_back(alphabet[o]);
    Bits observing = sys.runs_with(s);
    auto events = [&](const std::vector<Extension>& phis) {
      Bits left = observing, right = sys.all_runs();
      for (std::size_t i = 0; i <= m + 1; ++i) {
        left &= sys.runs_where(phis[i], static_cast<int>(i));
        Extension e = (i >= 1 && i <= m) ? phis[i] & obs_ext[seq[i - 1]] : phis[i];
        right &= sys.runs_where(e, static_cast<int>(i));
      }
      return std::make_pair(left, right);
    };
    for (std::size_t k = 0; k < per_sequence; ++k) {
      std::vector<Extension> phis, psis;
      for (std::size_t i = 0; i <= m + 1; ++i) {
        phis.push_back(random_ext());
        psis.push_back(random_ext());
      }
      auto [lp, rp] = events(phis);
      auto [lq, rq] = events(psis);
      bool ok = prior.at_least(lp, lq) == prior.at_least(rp, rq);
      auto witness = [&] { return "obs " + describe(s) + " sample " + std::to_string(k); };
      if (!options.relaxed) strict.check_lazy(ok, witness);
      if (!prior.is_bottom(lp)) weak.check_lazy(ok, witness);
    }
  }
  Report report;
  if (!options.relaxed) strict.emit(report);
  weak.emit(report);
  report.note("UPD4: " + std::to_string(seqs.size()) + " observation sequences, " + std::to_string(per_sequence) +
              " sampled event pairs each");
  return report;
}

Report validate_upd(const System& sys, const UpdateStructure& u, const UpdOptions& options) {
  Report report;
  Tally upd1("UPD1");
  upd1.check(sys.vocab() == u.vocab(), "system and update structure use different vocabularies");
  upd1.check(sys.vocab().atom_count() <= Vocabulary::kMaxAtoms, "vocabulary too large");
  upd1.emit(report);
  report.merge(check_upd2(sys, u, options));
  report.merge(check_upd3(sys, options));
  report.merge(check_upd4(sys, options));
  return report;
}

// ---------------------------------------------------------------------------

std::vector<TraceStep> belief_trace(const System& sys, const LocalState& observations) {
  std::vector<TraceStep> out;
  LocalState prefix;
  out.push_back({0, std::nullopt, bel(sys, prefix)});
  for (std::size_t t = 1; t <= observations.size(); ++t) {
    prefix.push_back(observations[t - 1]);
    out.push_back({static_cast<int>(t), observations[t - 1], bel(sys, prefix)});
  }
  return out;
}

std::vector<std::vector<World>> most_plausible_histories(const System& sys, const LocalState& s) {
  LocalSpace space(sys, s);
  std::set<std::vector<World>> seen;
  if (space.empty()) return {};
  for_each_bit(space.most_plausible(), [&](std::size_t r) { seen.insert(sys.runs()[r].envs); });
  return {seen.begin(), seen.end()};
}

BorrowedCar borrowed_car() {
  Vocabulary vocab({"car_parked_outside", "fuel_tank_full"});
  UpdateStructure u = UpdateStructure::hamming(vocab);
  Formula parked = Formula::atom("car_parked_outside");
  Formula full = Formula::atom("fuel_tank_full");
  std::vector<Formula> menu{Formula::truth(), parked & full, parked, !full};
  LocalState observations{parked & full, Formula::truth(), parked, !full};
  System sys = system_from_update(u, 4, menu);
  return BorrowedCar{std::move(u), std::move(sys), std::move(observations)};
}

Report borrowed_car_checks(const BorrowedCar& scenario) {
  const System& sys = scenario.system;
  const Vocabulary& vocab = sys.vocab();
  Report report;
  if (scenario.observations.size() < 4 || sys.horizon() < 4)
    throw PreconditionError("the scenario needs four observations");
  auto trace = belief_trace(sys, scenario.observations);
  const Extension& mu1 = trace[1].beliefs;
  report.add("MU2", trace[2].beliefs == mu1, "mu2=" + describe(trace[2].beliefs, vocab) + " mu1=" + describe(mu1, vocab));
  report.add("MU3", trace[3].beliefs == mu1, "mu3=" + describe(trace[3].beliefs, vocab) + " mu1=" + describe(mu1, vocab));
  LocalState all(scenario.observations.begin(), scenario.observations.begin() + 4);
  auto histories = most_plausible_histories(sys, all);
  Extension last = extension(scenario.observations[3], vocab);
  Tally defer("DEFER");
  defer.check(!histories.empty(), "no most plausible run at time 4");
  for (const auto& h : histories) {
    bool kept = mu1.contains(h[1]) && h[2] == h[1] && h[3] == h[1];
    bool changed_late = h[4] != h[3] && last.contains(h[4]);
    defer.check_lazy(kept && changed_late, [&] {
      std::string seq;
      for (World w : h) seq += vocab.world_name(w) + " ";
      return "history " + seq;
    });
  }
  defer.emit(report);
  return report;
}

}  // namespace belief
