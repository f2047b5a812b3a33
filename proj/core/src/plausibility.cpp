#include "belief/plausibility.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "belief/error.hpp"

namespace belief {

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Incomparable: return "Incomparable";
  }
  return "?";
}

PlausibilityMeasure PlausibilityMeasure::ranked(std::vector<Rank> ranks) {
  std::size_t n = ranks.size();
  return PlausibilityMeasure(n, Ranked{std::move(ranks)});
}

PlausibilityMeasure PlausibilityMeasure::preferential(std::vector<std::uint32_t> key_of,
                                                      std::vector<Bits> preferred) {
  for (auto k : key_of)
    if (k >= preferred.size()) throw PreconditionError("element class out of range");
  for (std::size_t k = 0; k < preferred.size(); ++k) {
    if (preferred[k].size() != preferred.size()) throw PreconditionError("malformed preference matrix");
    if (preferred[k].test(k)) throw PreconditionError("preference order is not irreflexive");
  }
  std::size_t n = key_of.size();
  return PlausibilityMeasure(n, Preferential{std::move(key_of), std::move(preferred)});
}

PlausibilityMeasure PlausibilityMeasure::custom(std::size_t carrier_size, CompareFn compare) {
  return PlausibilityMeasure(carrier_size, Custom{std::move(compare)});
}

PlausibilityMeasure::Kind PlausibilityMeasure::kind() const {
  switch (rep_->index()) {
    case 0: return Kind::Ranked;
    case 1: return Kind::Preferential;
    default: return Kind::Custom;
  }
}

void PlausibilityMeasure::check(const Bits& a) const {
  if (a.size() != size_) throw PreconditionError("set is not over the measure's carrier");
}

Bits PlausibilityMeasure::Preferential::keys_of(const Bits& elements) const {
  Bits keys(preferred.size());
  for_each_bit(elements, [&](std::size_t e) { keys.set(key_of[e]); });
  return keys;
}

// Pl(a) >= Pl(b) iff every element of b - a is beaten by some element of a
// that is itself not beaten from inside b - a.
bool PlausibilityMeasure::preferential_at_least(const Preferential& p, const Bits& a,
                                                const Bits& b) const {
  Bits rest = b - a;
  if (rest.none()) return true;
  Bits rest_keys = p.keys_of(rest);
  Bits a_keys = p.keys_of(a);
  Bits unbeaten(p.preferred.size());
  for_each_bit(a_keys, [&](std::size_t k) {
    if (!p.preferred[k].intersects(rest_keys)) unbeaten.set(k);
  });
  for (auto k = rest_keys.find_first(); k != Bits::npos; k = rest_keys.find_next(k))
    if (!p.preferred[k].intersects(unbeaten)) return false;
  return true;
}

Ordering PlausibilityMeasure::compare(const Bits& a, const Bits& b) const {
  check(a);
  check(b);
  return std::visit(
      [&](const auto& rep) -> Ordering {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ranked>) {
          Rank ra = rank_of(a), rb = rank_of(b);
          if (ra == rb) return Ordering::Equal;
          return ra < rb ? Ordering::Greater : Ordering::Less;
        } else if constexpr (std::is_same_v<T, Preferential>) {
          bool ge = preferential_at_least(rep, a, b);
          bool le = preferential_at_least(rep, b, a);
          if (ge && le) return Ordering::Equal;
          if (ge) return Ordering::Greater;
          if (le) return Ordering::Less;
          return Ordering::Incomparable;
        } else {
          return rep.compare(a, b);
        }
      },
      *rep_);
}

bool PlausibilityMeasure::at_least(const Bits& a, const Bits& b) const {
  if (const auto* p = std::get_if<Preferential>(rep_.get())) {
    check(a);
    check(b);
    return preferential_at_least(*p, a, b);
  }
  Ordering o = compare(a, b);
  return o == Ordering::Greater || o == Ordering::Equal;
}

bool PlausibilityMeasure::exceeds(const Bits& a, const Bits& b) const {
  return compare(a, b) == Ordering::Greater;
}

bool PlausibilityMeasure::is_bottom(const Bits& a) const {
  check(a);
  if (std::holds_alternative<Ranked>(*rep_)) return rank_of(a) == kInfiniteRank;
  if (std::holds_alternative<Preferential>(*rep_)) return a.none();
  return compare(a, Bits(size_)) == Ordering::Equal;
}

bool PlausibilityMeasure::prefers(std::size_t x, std::size_t y) const {
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ranked>) {
          return rep.ranks.at(x) < rep.ranks.at(y);
        } else if constexpr (std::is_same_v<T, Preferential>) {
          return rep.preferred[rep.key_of.at(y)].test(rep.key_of.at(x));
        } else {
          return rep.compare(make_bits(size_, {x}), make_bits(size_, {y})) == Ordering::Greater;
        }
      },
      *rep_);
}

Rank PlausibilityMeasure::rank(std::size_t element) const {
  const auto* r = std::get_if<Ranked>(rep_.get());
  if (!r) throw PreconditionError("rank requested from a measure that is not ranked");
  return r->ranks.at(element);
}

Rank PlausibilityMeasure::rank_of(const Bits& a) const {
  const auto* r = std::get_if<Ranked>(rep_.get());
  if (!r) throw PreconditionError("rank requested from a measure that is not ranked");
  Rank best = kInfiniteRank;
  for (auto i = a.find_first(); i != Bits::npos && best > 0; i = a.find_next(i))
    best = std::min(best, r->ranks[i]);
  return best;
}

Bits PlausibilityMeasure::most_plausible(const Bits& a) const {
  check(a);
  Bits out(size_);
  if (const auto* r = std::get_if<Ranked>(rep_.get())) {
    Rank best = rank_of(a);
    if (best == kInfiniteRank) return out;
    for_each_bit(a, [&](std::size_t i) {
      if (r->ranks[i] == best) out.set(i);
    });
    return out;
  }
  if (const auto* p = std::get_if<Preferential>(rep_.get())) {
    Bits keys = p->keys_of(a);
    for_each_bit(a, [&](std::size_t i) {
      if (!p->preferred[p->key_of[i]].intersects(keys)) out.set(i);
    });
    return out;
  }
  throw PreconditionError("most plausible elements are undefined for a custom measure");
}

std::uint32_t PlausibilityMeasure::key(std::size_t element) const {
  if (const auto* p = std::get_if<Preferential>(rep_.get())) return p->key_of.at(element);
  return static_cast<std::uint32_t>(element);
}

PlausibilityMeasure PlausibilityMeasure::key_measure() const {
  const auto* p = std::get_if<Preferential>(rep_.get());
  if (!p) throw PreconditionError("class measure requested from a measure that is not preferential");
  std::vector<std::uint32_t> identity(p->preferred.size());
  for (std::uint32_t k = 0; k < identity.size(); ++k) identity[k] = k;
  return preferential(std::move(identity), p->preferred);
}

PlausibilityMeasure PlausibilityMeasure::restrict(const std::vector<std::size_t>& elements) const {
  for (auto e : elements)
    if (e >= size_) throw PreconditionError("element outside carrier");
  return std::visit(
      [&](const auto& rep) -> PlausibilityMeasure {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Ranked>) {
          std::vector<Rank> ranks;
          for (auto e : elements) ranks.push_back(rep.ranks[e]);
          return ranked(std::move(ranks));
        } else if constexpr (std::is_same_v<T, Preferential>) {
          std::vector<std::uint32_t> keys;
          for (auto e : elements) keys.push_back(rep.key_of[e]);
          return PlausibilityMeasure(elements.size(), Preferential{std::move(keys), rep.preferred});
        } else {
          auto fn = rep.compare;
          std::size_t global = size_;
          auto lift = [elements, global](const Bits& local) {
            Bits g(global);
            for_each_bit(local, [&](std::size_t i) { g.set(elements[i]); });
            return g;
          };
          return custom(elements.size(),
                        [fn, lift](const Bits& a, const Bits& b) { return fn(lift(a), lift(b)); });
        }
      },
      *rep_);
}

PlausibilityMeasure from_preference(std::size_t carrier_size,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  // below[y] holds every x with x < y.
  std::vector<Bits> below(carrier_size, Bits(carrier_size));
  for (auto [x, y] : order) {
    if (x >= carrier_size || y >= carrier_size) throw PreconditionError("element outside carrier");
    below[y].set(x);
  }
  for (std::size_t k = 0; k < carrier_size; ++k)
    for (std::size_t y = 0; y < carrier_size; ++y)
      if (below[y].test(k)) below[y] |= below[k];
  for (std::size_t x = 0; x < carrier_size; ++x)
    if (below[x].test(x)) throw PreconditionError("preference order is cyclic");
  std::vector<std::uint32_t> keys(carrier_size);
  for (std::size_t i = 0; i < carrier_size; ++i) keys[i] = static_cast<std::uint32_t>(i);
  return PlausibilityMeasure::preferential(std::move(keys), std::move(below));
}

// ---------------------------------------------------------------------------

namespace {

std::string set_name(const Bits& b) {
  std::string s = "{";
  bool first = true;
  for_each_bit(b, [&](std::size_t i) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(i);
  });
  return s + "}";
}

// Each element goes to one of four buckets; bucket 3 means "in neither".
template <class F>
std::optional<std::string> for_each_assignment(std::size_t n, const QualitativeBudget& budget, F&& f) {
  auto run = [&](const std::vector<int>& bucket) -> std::optional<std::string> {
    Bits a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (bucket[i] == 0) a.set(i);
      if (bucket[i] == 1) b.set(i);
      if (bucket[i] == 2) c.set(i);
    }
    return f(a, b, c);
  };
  std::vector<int> bucket(n, 0);
  if (n <= budget.exhaustive_up_to) {
    std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
      for (std::size_t i = 0; i < n; ++i) bucket[i] = static_cast<int>(code >> (2 * i) & 3u);
      if (auto v = run(bucket)) return v;
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<int> pick(0, 3);
  for (std::size_t s = 0; s < budget.samples; ++s) {
    for (auto& x : bucket) x = pick(rng);
    if (auto v = run(bucket)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> qualitative_violation(const PlausibilityMeasure& m,
                                                 const QualitativeBudget& budget) {
  std::size_t n = m.carrier_size();
  // Disjoint-union axiom over pairwise disjoint a, b, c.
  auto a2 = for_each_assignment(n, budget, [&](const Bits& a, const Bits& b, const Bits& c)
                                               -> std::optional<std::string> {
    if (m.exceeds(a | b, c) && m.exceeds(a | c, b) && !m.exceeds(a, b | c))
      return "A2 A=" + set_name(a) + " B=" + set_name(b) + " C=" + set_name(c);
    return std::nullopt;
  });
  if (a2) return a2;
  // Bottom-union axiom; buckets 0/1 are exclusive members, 2 is shared.
  return for_each_assignment(n, budget, [&](const Bits& only_a, const Bits& only_b, const Bits& both)
                                            -> std::optional<std::string> {
    Bits a = only_a | both, b = only_b | both;
    if (m.is_bottom(a) && m.is_bottom(b) && !m.is_bottom(a | b))
      return "A3 A=" + set_name(a) + " B=" + set_name(b);
    return std::nullopt;
  });
}

bool is_qualitative(const PlausibilityMeasure& m, const QualitativeBudget& budget) {
  return !qualitative_violation(m, budget).has_value();
}

// ---------------------------------------------------------------------------

PlausibilityStructure PlausibilityStructure::over_worlds(Vocabulary vocab, PlausibilityMeasure measure) {
  if (measure.carrier_size() != vocab.world_count())
    throw PreconditionError("measure carrier does not match the world count");
  std::vector<World> labels = enumerate_worlds(vocab);
  return PlausibilityStructure{std::move(vocab), std::move(measure), std::move(labels)};
}

Bits PlausibilityStructure::elements_of(const Extension& e) const {
  Bits out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (e.contains(labels[i])) out.set(i);
  return out;
}

bool PlausibilityStructure::conditional(const Extension& phi, const Extension& psi) const {
  Bits given = elements_of(phi);
  if (measure.is_bottom(given)) return true;
  Bits yes = elements_of(phi & psi);
  Bits no = given - yes;
  return measure.exceeds(yes, no);
}

bool PlausibilityStructure::conditional(const Formula& phi, const Formula& psi) const {
  return conditional(extension(phi, vocab), extension(psi, vocab));
}

bool conditional_holds(const PlausibilityStructure& s, const Formula& phi, const Formula& psi) {
  return s.conditional(phi, psi);
}

bool believes(const PlausibilityStructure& s, const Formula& phi) {
  return s.conditional(Formula::truth(), phi);
}

Report check_klm_closure(const PlausibilityStructure& s, const std::vector<Formula>& formulas) {
  // One representative formula per extension; LLE is checked across the
  // syntactic variants of each class.
  std::map<Extension, std::vector<Formula>> classes;
  for (const auto& f : formulas) classes[extension(f, s.vocab)].push_back(f);
  std::vector<Extension> exts;
  std::vector<Formula> reps;
  for (const auto& [e, fs] : classes) {
    exts.push_back(e);
    reps.push_back(fs.front());
  }
  std::size_t n = exts.size();
  std::vector<std::vector<char>> holds(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) holds[i][j] = s.conditional(exts[i], exts[j]);

  std::map<std::pair<Extension, Extension>, bool> memo;
  auto cond = [&](const Extension& a, const Extension& b) {
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = s.conditional(a, b);
    memo.emplace(key, v);
    return v;
  };
  auto arrow = [](const Formula& a, const Formula& b) { return "(" + a.str() + ") ~> (" + b.str() + ")"; };

  Tally lle("LLE"), rw("RW"), ref("REF"), and_("AND"), or_("OR"), cm("CM");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& variants = classes[exts[i]];
    for (std::size_t v = 1; v < variants.size(); ++v)
      for (std::size_t j = 0; j < n; ++j)
        lle.check_lazy(s.conditional(variants[v], reps[j]) == (holds[i][j] != 0),
                       [&] { return arrow(variants[v], reps[j]) + " differs from " + arrow(reps[i], reps[j]); });
    ref.check_lazy(holds[i][i] != 0, [&] { return arrow(reps[i], reps[i]); });
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (holds[i][j] && exts[j].subset_of(exts[k]))
          rw.check_lazy(holds[i][k] != 0, [&] { return arrow(reps[i], reps[j]) + " but not " + arrow(reps[i], reps[k]); });
        if (holds[i][j] && holds[i][k]) {
          and_.check_lazy(cond(exts[i], exts[j] & exts[k]),
                          [&] { return arrow(reps[i], reps[j] & reps[k]); });
          cm.check_lazy(cond(exts[i] & exts[j], exts[k]),
                        [&] { return arrow(reps[i] & reps[j], reps[k]); });
        }
        if (holds[i][k] && holds[j][k])
          or_.check_lazy(cond(exts[i] | exts[j], exts[k]),
                         [&] { return arrow(reps[i] | reps[j], reps[k]); });
      }
    }
  }
  Report report;
  for (const Tally* t : {&lle, &rw, &ref, &and_, &or_, &cm}) t->emit(report);
  report.note("KLM: " + std::to_string(formulas.size()) + " formulas, " + std::to_string(n) +
              " extension classes");
  return report;
}

}  // namespace belief
