#include "belief/system.hpp"

#include <algorithm>
#include <random>

#include "belief/error.hpp"

namespace belief {

std::string describe(const LocalState& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s[i].str();
  }
  return out + ">";
}

System::System(Vocabulary vocab, std::vector<Run> runs, PlausibilityMeasure prior, int horizon)
    : System(vocab, std::move(runs), std::move(prior), horizon, Extension::all(vocab.world_count())) {}

System::System(Vocabulary vocab, std::vector<Run> runs, PlausibilityMeasure prior, int horizon,
               Extension admissible)
    : vocab_(std::move(vocab)),
      runs_(std::move(runs)),
      prior_(std::move(prior)),
      horizon_(horizon),
      admissible_(std::move(admissible)) {
  if (horizon_ < 0) throw PreconditionError("negative horizon");
  if (prior_.carrier_size() != runs_.size())
    throw PreconditionError("prior carrier does not match the run count");
  if (admissible_.universe() != vocab_.world_count())
    throw PreconditionError("admissible worlds are not over the vocabulary");
  for (const auto& r : runs_) {
    if (r.envs.size() != static_cast<std::size_t>(horizon_) + 1 ||
        r.obs.size() != static_cast<std::size_t>(horizon_))
      throw PreconditionError("run length does not match the horizon");
    for (World w : r.envs)
      if (w.index >= vocab_.world_count()) throw PreconditionError("world outside the vocabulary");
  }
  index();
}

void System::index() {
  obs_ids_.assign(runs_.size(), {});
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    for (const auto& o : runs_[r].obs) {
      std::string key = o.str();
      auto [it, fresh] = observation_ids_.emplace(key, static_cast<std::uint32_t>(observations_.size()));
      if (fresh) observations_.push_back(o);
      obs_ids_[r].push_back(it->second);
    }
  }
  std::size_t n = runs_.size();
  classes_.assign(static_cast<std::size_t>(horizon_) + 1, {});
  class_of_.assign(static_cast<std::size_t>(horizon_) + 1, std::vector<std::size_t>(n));
  if (n > 0) classes_[0].push_back(LocalClass{{}, full_bits(n)});
  for (int t = 1; t <= horizon_; ++t) {
    std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> child;
    for (std::size_t r = 0; r < n; ++r) {
      auto key = std::make_pair(class_of_[t - 1][r], obs_ids_[r][t - 1]);
      auto [it, fresh] = child.emplace(key, classes_[t].size());
      if (fresh) {
        auto obs = classes_[t - 1][key.first].observations;
        obs.push_back(key.second);
        classes_[t].push_back(LocalClass{std::move(obs), Bits(n)});
      }
      classes_[t][it->second].runs.set(r);
      class_of_[t][r] = it->second;
    }
  }
}

std::optional<std::uint32_t> System::observation_id(const Formula& f) const {
  auto it = observation_ids_.find(f.str());
  if (it == observation_ids_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t System::obs_id(std::size_t run, int time) const {
  if (time < 1 || time > horizon_) throw PreconditionError("no observation at time " + std::to_string(time));
  return obs_ids_.at(run)[time - 1];
}

LocalState System::state_of(const LocalClass& c) const {
  LocalState s;
  for (auto id : c.observations) s.push_back(observations_[id]);
  return s;
}

LocalState System::local_state(Point p) const {
  const Run& r = runs_.at(p.run);
  return LocalState(r.obs.begin(), r.obs.begin() + p.time);
}

Bits System::runs_with(const LocalState& s) const {
  std::size_t n = runs_.size();
  if (s.size() > static_cast<std::size_t>(horizon_) || n == 0) return Bits(n);
  std::vector<std::uint32_t> ids;
  for (const auto& f : s) {
    auto id = observation_id(f);
    if (!id) return Bits(n);
    ids.push_back(*id);
  }
  // Follow one witness run per step through the class tree.
  Bits current = classes_[0][0].runs;
  for (std::size_t t = 1; t <= ids.size(); ++t) {
    std::size_t found = Bits::npos;
    for (auto r = current.find_first(); r != Bits::npos; r = current.find_next(r))
      if (obs_ids_[r][t - 1] == ids[t - 1]) {
        found = r;
        break;
      }
    if (found == Bits::npos) return Bits(n);
    current = classes_[t][class_of_[t][found]].runs;
  }
  return current;
}

std::vector<LocalState> System::attainable_states(int time) const {
  std::vector<LocalState> out;
  for (const auto& c : classes_.at(time)) out.push_back(state_of(c));
  return out;
}

Bits System::runs_where(const Extension& e, int time) const {
  Bits out(runs_.size());
  for (std::size_t r = 0; r < runs_.size(); ++r)
    if (e.contains(runs_[r].envs[time])) out.set(r);
  return out;
}

Extension System::worlds_at(const Bits& runs, int time) const {
  Extension e(vocab_.world_count());
  for_each_bit(runs, [&](std::size_t r) { e.insert(runs_[r].envs[time]); });
  return e;
}

System System::with_assignment(LocalAssignment assignment) const {
  System copy = *this;
  copy.assignment_ = std::make_shared<const LocalAssignment>(std::move(assignment));
  return copy;
}

bool indistinguishable(const System& sys, Point a, Point b) {
  if (a.time != b.time) return false;
  return sys.class_of(a.run, a.time) == sys.class_of(b.run, b.time);
}

// ---------------------------------------------------------------------------

LocalSpace::LocalSpace(const System& sys, LocalState state)
    : sys_(&sys), state_(std::move(state)), time_(static_cast<int>(state_.size())) {
  if (time_ > sys.horizon()) throw PreconditionError("local state is longer than the horizon");
  carrier_ = sys.runs_with(state_);
}

Ordering LocalSpace::compare(const Bits& a, const Bits& b) const {
  if (const auto* assign = sys_->assignment()) return (*assign)(state_, a, b);
  return sys_->prior().compare(a, b);
}

bool LocalSpace::at_least(const Bits& a, const Bits& b) const {
  if (!sys_->assignment()) return sys_->prior().at_least(a, b);
  Ordering o = compare(a, b);
  return o == Ordering::Greater || o == Ordering::Equal;
}

bool LocalSpace::is_bottom(const Bits& a) const {
  if (!sys_->assignment()) return sys_->prior().is_bottom(a);
  return compare(a, Bits(a.size())) == Ordering::Equal;
}

bool LocalSpace::conditional(const Bits& given, const Bits& then) const {
  Bits g = given & carrier_;
  if (is_bottom(g)) return true;
  Bits yes = g & then;
  return exceeds(yes, g - yes);
}

bool LocalSpace::uses_conditioning() const {
  return !sys_->assignment() && sys_->prior().kind() != PlausibilityMeasure::Kind::Custom;
}

Bits LocalSpace::most_plausible() const {
  if (sys_->assignment()) throw PreconditionError("most plausible points need a conditioned prior");
  return sys_->prior().most_plausible(carrier_);
}

LocalSpace condition_prior(const System& sys, const LocalState& s) { return LocalSpace(sys, s); }

// ---------------------------------------------------------------------------

namespace {

class Labeller {
 public:
  explicit Labeller(const System& sys) : sys_(sys), n_(sys.run_count()) {}

  std::vector<Bits> run(const KptFormula& f) {
    std::vector<Bits> out(static_cast<std::size_t>(sys_.horizon()) + 1, Bits(n_));
    int last = sys_.horizon() - static_cast<int>(f.next_depth());
    for (int t = 0; t <= last; ++t) out[t] = at(f, t);
    return out;
  }

 private:
  Bits at(const KptFormula& f, int t) {
    switch (f.op()) {
      case KOp::Prop:
        return sys_.runs_where(extension(f.base(), sys_.vocab()), t);
      case KOp::Learn: {
        Bits out(n_);
        if (t == 0) return out;
        auto id = sys_.observation_id(f.base());
        if (!id) return out;
        for (std::size_t r = 0; r < n_; ++r)
          if (sys_.obs_id(r, t) == *id) out.set(r);
        return out;
      }
      case KOp::Not: {
        Bits b = at(f.left(), t);
        b.flip();
        return b;
      }
      case KOp::And: return at(f.left(), t) & at(f.right(), t);
      case KOp::Or: return at(f.left(), t) | at(f.right(), t);
      case KOp::Implies: {
        Bits a = at(f.left(), t);
        a.flip();
        return a | at(f.right(), t);
      }
      case KOp::Iff: {
        Bits x = at(f.left(), t) ^ at(f.right(), t);
        x.flip();
        return x;
      }
      case KOp::Next: return at(f.left(), t + 1);
      case KOp::Know: {
        Bits inner = at(f.left(), t);
        Bits out(n_);
        for (const auto& c : sys_.classes(t))
          if (c.runs.is_subset_of(inner)) out |= c.runs;
        return out;
      }
      case KOp::Believe: return conditional(full_bits(n_), at(f.left(), t), t);
      case KOp::Cond: return conditional(at(f.left(), t), at(f.right(), t), t);
    }
    return Bits(n_);
  }

  Bits conditional(const Bits& given, const Bits& then, int t) {
    Bits out(n_);
    for (const auto& c : sys_.classes(t)) {
      LocalSpace space(sys_, sys_.state_of(c));
      if (space.conditional(given, then)) out |= c.runs;
    }
    return out;
  }

  const System& sys_;
  std::size_t n_;
};

}  // namespace

std::vector<Bits> label(const System& sys, const KptFormula& f) { return Labeller(sys).run(f); }

bool model_check(const System& sys, Point p, const KptFormula& f) {
  if (p.run >= sys.run_count() || p.time < 0 || p.time > sys.horizon())
    throw PreconditionError("point outside the system");
  if (p.time + static_cast<int>(f.next_depth()) > sys.horizon())
    throw HorizonError("next operators in " + f.str() + " pass the horizon at time " +
                       std::to_string(p.time));
  return label(sys, f)[p.time].test(p.run);
}

Extension bel(const System& sys, const LocalState& s) {
  Extension none(sys.vocab().world_count());
  if (s.size() > static_cast<std::size_t>(sys.horizon())) return none;
  LocalSpace space(sys, s);
  if (space.empty() || space.is_bottom(space.carrier())) return none;
  if (!space.uses_conditioning()) return bel_by_conditionals(sys, s);
  return sys.worlds_at(space.most_plausible(), space.time());
}

Extension bel_by_conditionals(const System& sys, const LocalState& s) {
  Extension out(sys.vocab().world_count());
  if (s.size() > static_cast<std::size_t>(sys.horizon())) return out;
  LocalSpace space(sys, s);
  const Bits& carrier = space.carrier();
  if (space.empty() || space.is_bottom(carrier)) return out;
  // w survives iff the characteristic formula's negation is not believed.
  for (World w : sys.worlds_at(carrier, space.time()).worlds()) {
    Bits here = sys.runs_where(Extension::of(sys.vocab().world_count(), {w.index}), space.time()) & carrier;
    if (!space.exceeds(carrier - here, here)) out.insert(w);
  }
  return out;
}

// ---------------------------------------------------------------------------

Report check_prior_local_rule(const System& sys, const PriorRuleOptions& options) {
  Tally tally("PRIOR-LOCAL");
  std::size_t n = sys.run_count();
  for (int t = 0; t < sys.horizon(); ++t) {
    for (const auto& next : sys.classes(t + 1)) {
      std::vector<std::size_t> elems = members(next.runs);
      if (elems.size() > options.max_points)
        throw BudgetExceeded("local state with " + std::to_string(elems.size()) +
                             " points exceeds the budget of " + std::to_string(options.max_points));
      LocalSpace later(sys, sys.state_of(next));
      std::size_t parent = sys.class_of(elems.front(), t);
      const LocalClass& before = sys.classes(t)[parent];
      LocalSpace earlier(sys, sys.state_of(before));
      // Perfect recall: prev of the later carrier sits inside the earlier one.
      tally.check(next.runs.is_subset_of(before.runs), "prev of " + describe(later.state()) + " leaves its parent");
      std::vector<Bits> subsets;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask)
        subsets.push_back(subset_of(elems, mask, n));
      for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = 0; j < subsets.size(); ++j) {
          bool now = later.at_least(subsets[j], subsets[i]);
          bool then = earlier.at_least(subsets[j], subsets[i]);
          tally.check_lazy(now == then, [&] {
            return "state " + describe(later.state()) + " A=" + std::to_string(i) + " B=" + std::to_string(j);
          });
        }
    }
  }
  Report report;
  tally.emit(report);
  report.note("PRIOR-LOCAL: " + std::to_string(tally.instances()) + " comparisons");
  return report;
}

std::string describe_run(const System& sys, std::size_t run) {
  const Run& r = sys.runs().at(run);
  std::string out = "run " + std::to_string(run) + " envs";
  for (World w : r.envs) out += " " + sys.vocab().world_name(w);
  out += " obs";
  for (const auto& o : r.obs) out += " [" + o.str() + "]";
  return out;
}

Report validate_bcs(const System& sys, const BcsOptions& options) {
  Report report;
  const auto& runs = sys.runs();

  Tally bcs1("BCS1");
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (int t = 0; t <= sys.horizon(); ++t)
      bcs1.check_lazy(sys.admissible().contains(runs[r].envs[t]), [&] {
        return describe_run(sys, r) + " time " + std::to_string(t) + " state is inconsistent";
      });
  bcs1.emit(report);

  Tally bcs2("BCS2");
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (int t = 0; t <= sys.horizon(); ++t) {
      const LocalClass& c = sys.classes(t)[sys.class_of(r, t)];
      bool ok = c.observations.size() == static_cast<std::size_t>(t);
      for (int k = 1; ok && k <= t; ++k) ok = c.observations[k - 1] == sys.obs_id(r, k);
      bcs2.check_lazy(ok, [&] { return describe_run(sys, r) + " local state at time " + std::to_string(t); });
    }
  bcs2.emit(report);

  // learn atoms are decided by syntactic identity with the observation, so
  // what can go wrong is an observation outside the environment language.
  Tally bcs3("BCS3");
  for (const auto& o : sys.observations()) {
    bool ok = true;
    try {
      check_atoms(o, sys.vocab());
    } catch (const UnknownAtomError&) {
      ok = false;
    }
    bcs3.check_lazy(ok, [&] { return "observation " + o.str() + " is not over the vocabulary"; });
  }
  bcs3.emit(report);

  Tally bcs4("BCS4");
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (int t = 1; t <= sys.horizon(); ++t) {
      bool ok = false;
      try {
        ok = evaluate(runs[r].obs[t - 1], sys.vocab(), runs[r].envs[t]);
      } catch (const UnknownAtomError&) {
      }
      bcs4.check_lazy(ok, [&] { return describe_run(sys, r) + " observation at time " + std::to_string(t) + " is false"; });
    }
  bcs4.emit(report);

  Tally bcs5("BCS5");
  if (const auto* assign = sys.assignment()) {
    std::mt19937_64 rng(options.seed);
    for (int t = 0; t <= sys.horizon(); ++t)
      for (const auto& c : sys.classes(t)) {
        LocalState s = sys.state_of(c);
        std::vector<std::size_t> elems = members(c.runs);
        auto probe = [&](std::uint64_t ma, std::uint64_t mb) {
          Bits a = subset_of(elems, ma, sys.run_count());
          Bits b = subset_of(elems, mb, sys.run_count());
          Ordering local = (*assign)(s, a, b);
          Ordering prior = sys.prior().compare(a, b);
          bcs5.check_lazy(local == prior, [&] {
            return "state " + describe(s) + " local " + std::string(to_string(local)) + " prior " +
                   std::string(to_string(prior));
          });
        };
        if (elems.size() <= options.exhaustive_points) {
          std::uint64_t total = std::uint64_t{1} << elems.size();
          for (std::uint64_t ma = 0; ma < total; ++ma)
            for (std::uint64_t mb = 0; mb < total; ++mb) probe(ma, mb);
        } else {
          std::uniform_int_distribution<std::uint64_t> pick(
              0, elems.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << elems.size()) - 1);
          for (std::size_t k = 0; k < options.samples; ++k) probe(pick(rng), pick(rng));
        }
      }
  } else {
    bcs5.check(true, "");
    report.note("BCS5: local plausibility is the prior conditioned on each local state");
  }
  bcs5.emit(report);
  return report;
}

}  // namespace belief
