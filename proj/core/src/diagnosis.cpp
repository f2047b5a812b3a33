#include "belief/diagnosis.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "belief/error.hpp"
#include "belief/revision.hpp"

namespace belief {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Xor: return "XOR";
  }
  return "?";
}

GateKind parse_gate_kind(const std::string& text) {
  for (GateKind k : {GateKind::And, GateKind::Or, GateKind::Not, GateKind::Xor})
    if (to_string(k) == text) return k;
  throw PreconditionError("unknown gate kind " + text);
}

bool gate_value(GateKind kind, const std::vector<bool>& inputs) {
  switch (kind) {
    case GateKind::And: return std::all_of(inputs.begin(), inputs.end(), [](bool b) { return b; });
    case GateKind::Or: return std::any_of(inputs.begin(), inputs.end(), [](bool b) { return b; });
    case GateKind::Not: return !inputs.at(0);
    case GateKind::Xor: return std::count(inputs.begin(), inputs.end(), true) % 2 == 1;
  }
  return false;
}

Circuit::Circuit(std::vector<Gate> gates) : gates_(std::move(gates)) {
  if (gates_.empty()) throw PreconditionError("a circuit needs at least one gate");
  auto mention = [&](const std::string& line) {
    if (std::find(lines_.begin(), lines_.end(), line) == lines_.end()) lines_.push_back(line);
  };
  std::set<std::string> ids;
  for (const auto& g : gates_) {
    if (!ids.insert(g.id).second) throw PreconditionError("duplicate gate " + g.id);
    if (g.kind == GateKind::Not ? g.inputs.size() != 1 : g.inputs.size() < 2)
      throw PreconditionError("gate " + g.id + " has the wrong number of inputs");
    for (const auto& in : g.inputs) mention(in);
    mention(g.output);
  }
  driver_.assign(lines_.size(), -1);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    auto& d = driver_[line_index(gates_[i].output)];
    if (d >= 0) throw PreconditionError("line " + gates_[i].output + " is driven by two gates");
    d = static_cast<int>(i);
  }
  std::vector<bool> done(gates_.size(), false);
  while (order_.size() < gates_.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (done[i]) continue;
      bool ready = std::all_of(gates_[i].inputs.begin(), gates_[i].inputs.end(), [&](const std::string& in) {
        int d = driver_[line_index(in)];
        return d < 0 || done[static_cast<std::size_t>(d)];
      });
      if (ready) {
        done[i] = true;
        order_.push_back(i);
        progress = true;
      }
    }
    if (!progress) throw PreconditionError("the circuit has a cycle");
  }
}

std::vector<std::string> Circuit::input_lines() const {
  std::vector<std::string> out;
  for (std::size_t l = 0; l < lines_.size(); ++l)
    if (driver_[l] < 0) out.push_back(lines_[l]);
  return out;
}

std::vector<std::string> Circuit::output_lines() const {
  std::vector<std::string> out;
  for (const auto& line : lines_) {
    bool consumed = std::any_of(gates_.begin(), gates_.end(), [&](const Gate& g) {
      return std::find(g.inputs.begin(), g.inputs.end(), line) != g.inputs.end();
    });
    if (!consumed) out.push_back(line);
  }
  return out;
}

std::size_t Circuit::line_index(const std::string& line) const {
  auto it = std::find(lines_.begin(), lines_.end(), line);
  if (it == lines_.end()) throw PreconditionError("unknown line " + line);
  return static_cast<std::size_t>(it - lines_.begin());
}

Vocabulary Circuit::vocabulary() const {
  std::vector<std::string> props;
  for (const auto& g : gates_) props.push_back("f_" + g.id);
  for (const auto& l : lines_) props.push_back("h_" + l);
  return Vocabulary(std::move(props));
}

Formula Circuit::fault_atom(std::size_t gate) const { return Formula::atom("f_" + gates_.at(gate).id); }
Formula Circuit::line_atom(std::size_t line) const { return Formula::atom("h_" + lines_.at(line)); }

std::string describe(const DiagnosisSet& d, const Circuit& c) {
  std::string out = "{";
  bool first = true;
  for (const auto& f : d) {
    out += first ? "{" : ", {";
    first = false;
    bool inner = true;
    for (std::size_t g = 0; g < c.gates().size(); ++g)
      if (f.contains(g)) {
        out += (inner ? "" : ", ") + c.gates()[g].id;
        inner = false;
      }
    out += "}";
  }
  return out + "}";
}

World encode(const Circuit& c, const DiagState& s) {
  const std::size_t g = c.gates().size(), l = c.lines().size();
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < g; ++i) index = index << 1 | (s.faults.contains(i) ? 1u : 0u);
  for (std::size_t j = 0; j < l; ++j) index = index << 1 | (s.lines.at(j) ? 1u : 0u);
  return World{index};
}

DiagState decode(const Circuit& c, World w) {
  const std::size_t g = c.gates().size(), l = c.lines().size();
  DiagState s{{}, std::vector<bool>(l)};
  for (std::size_t j = 0; j < l; ++j) s.lines[j] = w.index >> (l - 1 - j) & 1u;
  for (std::size_t i = 0; i < g; ++i)
    if (w.index >> (l + g - 1 - i) & 1u) s.faults.mask |= 1u << i;
  return s;
}

bool consistent(const Circuit& c, const DiagState& s) {
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    if (s.faults.contains(i)) continue;
    const Gate& g = c.gates()[i];
    std::vector<bool> in;
    for (const auto& line : g.inputs) in.push_back(s.lines[c.line_index(line)]);
    if (gate_value(g.kind, in) != s.lines[c.line_index(g.output)]) return false;
  }
  return true;
}

std::vector<DiagState> consistent_states(const Circuit& c) {
  std::vector<DiagState> out;
  const std::size_t total = std::size_t{1} << (c.gates().size() + c.lines().size());
  for (std::uint32_t w = 0; w < total; ++w) {
    DiagState s = decode(c, World{w});
    if (consistent(c, s)) out.push_back(std::move(s));
  }
  return out;
}

Extension consistent_worlds(const Circuit& c) {
  Extension e(std::size_t{1} << (c.gates().size() + c.lines().size()));
  for (const auto& s : consistent_states(c)) e.insert(encode(c, s));
  return e;
}

namespace {

Formula observation_of(const Circuit& c, const std::vector<std::string>& observed, const DiagState& s) {
  std::optional<Formula> out;
  for (const auto& line : observed) {
    std::size_t j = c.line_index(line);
    Formula lit = s.lines[j] ? c.line_atom(j) : !c.line_atom(j);
    out = out ? *out & lit : lit;
  }
  return out.value_or(Formula::truth());
}

}  // namespace

Formula io_formula(const DiagnosisSystem& d, const DiagState& s) { return observation_of(d.circuit, d.observed, s); }

DiagnosisSystem build_diag_system(Circuit c, std::vector<TestVector> tests, std::vector<std::string> observed) {
  if (tests.empty()) throw PreconditionError("diagnosis needs at least one test");
  const auto inputs = c.input_lines();
  for (const auto& t : tests) {
    for (const auto& line : inputs)
      if (!t.count(line)) throw PreconditionError("a test leaves input line " + line + " unset");
    for (const auto& [line, value] : t)
      if (std::find(inputs.begin(), inputs.end(), line) == inputs.end())
        throw PreconditionError("test sets " + line + ", which is not an input line");
  }
  if (observed.empty()) {
    for (const auto& line : c.lines()) {
      auto outs = c.output_lines();
      bool io = std::find(inputs.begin(), inputs.end(), line) != inputs.end() ||
                std::find(outs.begin(), outs.end(), line) != outs.end();
      if (io) observed.push_back(line);
    }
  }
  for (const auto& line : observed) c.line_index(line);

  Vocabulary vocab = c.vocabulary();
  const std::size_t faults = std::size_t{1} << c.gates().size();
  const int horizon = static_cast<int>(tests.size());
  std::vector<std::vector<DiagState>> by_fault(faults);
  for (auto& s : consistent_states(c)) by_fault[s.faults.mask].push_back(std::move(s));

  auto matches = [&](const DiagState& s, const TestVector& t) {
    return std::all_of(t.begin(), t.end(), [&](const auto& kv) { return s.lines[c.line_index(kv.first)] == kv.second; });
  };
  std::vector<Run> runs;
  std::vector<Rank> ranks;
  for (std::uint32_t mask = 0; mask < faults; ++mask) {
    std::vector<std::vector<const DiagState*>> options(static_cast<std::size_t>(horizon) + 1);
    for (const auto& s : by_fault[mask]) {
      options[0].push_back(&s);
      for (int k = 1; k <= horizon; ++k)
        if (matches(s, tests[k - 1])) options[k].push_back(&s);
    }
    std::size_t product = 1;
    for (const auto& o : options) product *= o.size();
    if (runs.size() + product > 200000) throw BudgetExceeded("diagnosis system has more than 200000 runs");
    std::vector<std::size_t> pick(options.size(), 0);
    while (product > 0) {
      Run r;
      for (std::size_t k = 0; k < options.size(); ++k) {
        const DiagState& s = *options[k][pick[k]];
        r.envs.push_back(encode(c, s));
        if (k > 0) r.obs.push_back(observation_of(c, observed, s));
      }
      runs.push_back(std::move(r));
      ranks.push_back(static_cast<Rank>(FaultSet{mask}.size()));
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  System sys(vocab, std::move(runs), PlausibilityMeasure::ranked(std::move(ranks)), horizon, consistent_worlds(c));
  return DiagnosisSystem{std::move(c), std::move(tests), std::move(observed), std::move(sys)};
}

DiagnosisSet diag(const DiagnosisSystem& d, const LocalState& s) {
  if (!d.system.attainable(s)) throw PreconditionError("local state " + describe(s) + " is not attainable");
  DiagnosisSet out;
  for (World w : bel(d.system, s).worlds()) out.insert(decode(d.circuit, w).faults);
  return out;
}

namespace {

// Some choice of outputs for the faulty gates makes the circuit, driven by
// the test inputs, satisfy the observation.
bool explains_step(const DiagnosisSystem& d, FaultSet f, std::size_t step, const Formula& observation) {
  const Circuit& c = d.circuit;
  const Vocabulary vocab = c.vocabulary();
  std::vector<std::size_t> faulty;
  for (std::size_t g = 0; g < c.gates().size(); ++g)
    if (f.contains(g)) faulty.push_back(g);
  for (std::uint32_t choice = 0; choice < (1u << faulty.size()); ++choice) {
    DiagState s{f, std::vector<bool>(c.lines().size(), false)};
    for (const auto& [line, value] : d.tests.at(step)) s.lines[c.line_index(line)] = value;
    for (std::size_t g : c.topological_order()) {
      const Gate& gate = c.gates()[g];
      bool out;
      auto pos = std::find(faulty.begin(), faulty.end(), g);
      if (pos != faulty.end()) {
        out = choice >> (pos - faulty.begin()) & 1u;
      } else {
        std::vector<bool> in;
        for (const auto& line : gate.inputs) in.push_back(s.lines[c.line_index(line)]);
        out = gate_value(gate.kind, in);
      }
      s.lines[c.line_index(gate.output)] = out;
    }
    if (evaluate(observation, vocab, encode(c, s))) return true;
  }
  return false;
}

}  // namespace

bool explains(const DiagnosisSystem& d, FaultSet f, const LocalState& s) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!explains_step(d, f, k, s[k])) return false;
  return true;
}

Report check_prop_diag(const DiagnosisSystem& d) {
  const System& sys = d.system;
  const Circuit& c = d.circuit;
  const std::uint32_t fault_sets = 1u << c.gates().size();
  Report report;

  Tally persistence("FAULT-PERSISTENCE"), reliable("IO-RELIABLE");
  for (std::size_t r = 0; r < sys.run_count(); ++r) {
    const Run& run = sys.runs()[r];
    FaultSet f0 = decode(c, run.envs[0]).faults;
    for (std::size_t t = 1; t < run.envs.size(); ++t) {
      persistence.check_lazy(decode(c, run.envs[t]).faults == f0, [&] { return describe_run(sys, r); });
      reliable.check_lazy(evaluate(run.obs[t - 1], sys.vocab(), run.envs[t]), [&] { return describe_run(sys, r); });
    }
  }
  persistence.emit(report);
  reliable.emit(report);

  Tally initial("DIAG-INITIAL");
  DiagnosisSet start = diag(d, {});
  initial.check(start == DiagnosisSet{FaultSet{}}, "Diag at time 0 is " + describe(start, c));
  initial.emit(report);

  std::map<std::size_t, DiagnosisSet> previous;  // class index at time t
  for (std::size_t i = 0; i < sys.classes(0).size(); ++i) previous[i] = diag(d, sys.state_of(sys.classes(0)[i]));
  Tally filter("DIAG-FILTER"), surprise("DIAG-SURPRISE"), disjoint("DIAG-DISJOINT"), growth("DIAG-CARDINALITY");
  for (int t = 1; t <= sys.horizon(); ++t) {
    std::map<std::size_t, DiagnosisSet> current;
    const auto& cls = sys.classes(t);
    for (std::size_t i = 0; i < cls.size(); ++i) {
      LocalState s = sys.state_of(cls[i]);
      std::size_t parent = sys.class_of(cls[i].runs.find_first(), t - 1);
      const DiagnosisSet& before = previous.at(parent);
      DiagnosisSet after = diag(d, s);
      current[i] = after;

      DiagnosisSet explaining;
      for (std::uint32_t m = 0; m < fault_sets; ++m)
        if (explains(d, FaultSet{m}, s)) explaining.insert(FaultSet{m});
      DiagnosisSet kept;
      for (const auto& f : before)
        if (explaining.count(f)) kept.insert(f);
      auto witness = [&] {
        return "state " + describe(s) + " before=" + describe(before, c) + " after=" + describe(after, c);
      };
      if (!kept.empty()) {
        filter.check_lazy(after == kept, witness);
        continue;
      }
      std::size_t j = c.gates().size() + 1;
      for (const auto& f : explaining) j = std::min(j, f.size());
      DiagnosisSet minimal;
      for (const auto& f : explaining)
        if (f.size() == j) minimal.insert(f);
      surprise.check_lazy(after == minimal, witness);
      bool apart = std::none_of(after.begin(), after.end(), [&](const FaultSet& f) { return before.count(f) > 0; });
      disjoint.check_lazy(apart, witness);
      bool bigger = std::all_of(after.begin(), after.end(), [&](const FaultSet& a) {
        return std::all_of(before.begin(), before.end(), [&](const FaultSet& b) { return a.size() > b.size(); });
      });
      growth.check_lazy(bigger, witness);
    }
    previous = std::move(current);
  }
  for (const Tally* tally : {&filter, &surprise, &disjoint, &growth}) tally->emit(report);
  report.note("DIAG: " + std::to_string(filter.instances()) + " consistent steps, " +
              std::to_string(surprise.instances()) + " surprising steps");
  return report;
}

System fault_projection(const DiagnosisSystem& d) {
  const Circuit& c = d.circuit;
  std::vector<std::string> props;
  for (const auto& g : c.gates()) props.push_back("f_" + g.id);
  Vocabulary faults(props);
  const std::size_t lines = c.lines().size();
  std::map<std::pair<std::size_t, std::string>, Formula> memo;
  auto remap = [&](std::size_t step, const Formula& o) {
    auto key = std::make_pair(step, o.str());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Extension e(faults.world_count());
    for (World w : enumerate_worlds(faults)) {
      FaultSet f = decode(c, World{w.index << lines}).faults;
      if (explains_step(d, f, step, o)) e.insert(w);
    }
    return memo.emplace(key, formula_of_extension(e, faults)).first->second;
  };
  std::vector<Run> runs;
  std::vector<Rank> ranks;
  for (std::size_t r = 0; r < d.system.run_count(); ++r) {
    const Run& run = d.system.runs()[r];
    World fault_world{run.envs[0].index >> lines};
    Run out{std::vector<World>(run.envs.size(), fault_world), {}};
    for (std::size_t k = 0; k < run.obs.size(); ++k) out.obs.push_back(remap(k, run.obs[k]));
    runs.push_back(std::move(out));
    ranks.push_back(d.system.prior().rank(r));
  }
  return System(faults, std::move(runs), PlausibilityMeasure::ranked(std::move(ranks)), d.system.horizon());
}

Report check_fault_projection(const DiagnosisSystem& d, const System& projected) {
  const System& sys = d.system;
  const std::size_t lines = d.circuit.lines().size();
  Tally agree("PROJECTION-BELIEF");
  for (int m = 0; m <= sys.horizon(); ++m)
    for (const auto& cls : sys.classes(m)) {
      std::size_t r = cls.runs.find_first();
      Extension full = bel(sys, sys.state_of(cls));
      Extension seen(projected.vocab().world_count());
      for (World w : full.worlds()) seen.insert(World{w.index >> lines});
      LocalState s = projected.local_state({r, m});
      Extension there = bel(projected, s);
      agree.check_lazy(seen == there, [&] {
        return "state " + describe(sys.state_of(cls)) + " faults=" + describe(seen, projected.vocab()) +
               " projected=" + describe(there, projected.vocab());
      });
    }
  Report report;
  agree.emit(report);
  Report rev = validate_rev(projected);
  for (const auto& row : rev.results()) {
    // Faults are never observed directly, so the strong form is not expected.
    if (row.name == "REV4")
      report.note("PROJECTED-REV4 " + std::string(row.passed ? "PASS" : "FAIL WITNESS: " + row.witness));
    else
      report.add("PROJECTED-" + row.name, row.passed, row.witness);
  }
  return report;
}

}  // namespace belief
