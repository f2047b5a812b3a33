#include "belief/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "belief/revision.hpp"

namespace belief {

namespace {

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& parts, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < parts.size(); ++i) out += (i > from ? " " : "") + parts[i];
  return out;
}

struct Line {
  std::size_t number;
  std::string text;
};

class Parser {
 public:
  explicit Parser(std::string_view source) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
      auto nl = source.find('\n', pos);
      std::string_view raw = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++number;
      auto hash = raw.find('#');
      std::string_view body = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
      if (!body.empty()) lines_.push_back({number, std::string(body)});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  Scenario run() {
    while (next_ < lines_.size()) directive(lines_[next_++]);
    validate();
    return sc_;
  }

 private:
  [[noreturn]] void fail(std::size_t line, const std::string& what) const { throw ScenarioError(line, what); }

  Formula formula(const Line& l, std::string_view text) {
    try {
      Formula f = parse_formula(text);
      formula_lines_.emplace_back(f, l.number);
      return f;
    } catch (const ParseError& e) {
      fail(l.number, e.what());
    }
  }

  int number(const Line& l, const std::string& tok) const {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v < 0) fail(l.number, "expected a natural number, got " + tok);
    return v;
  }

  std::vector<Line> block(const Line& opener) {
    std::vector<Line> body;
    while (next_ < lines_.size()) {
      const Line& l = lines_[next_++];
      if (l.text == "end") return body;
      body.push_back(l);
    }
    fail(opener.number, "block is missing its end");
  }

  void once(const Line& l, const std::string& key) {
    if (!seen_.insert(key).second) fail(l.number, "duplicate " + key + " directive");
    directive_line_[key] = l.number;
  }

  void directive(const Line& l) {
    auto tok = split(l.text);
    const std::string& key = tok[0];
    if (key == "vocab") {
      once(l, key);
      if (tok.size() < 2) fail(l.number, "empty vocabulary");
      sc_.vocab.assign(tok.begin() + 1, tok.end());
    } else if (key == "timestamps" || key == "horizon") {
      once(l, key);
      if (tok.size() != 2) fail(l.number, key + " takes one number");
      (key == "horizon" ? sc_.horizon : sc_.timestamps) = number(l, tok[1]);
    } else if (key == "initial") {
      once(l, key);
      if (tok.size() < 2) fail(l.number, "initial needs a formula");
      sc_.initial = formula(l, l.text.substr(l.text.find("initial") + 7));
    } else if (key == "prior") {
      once(l, key);
      if (tok.size() != 2) fail(l.number, "prior takes one kind");
      prior(l, tok[1]);
    } else if (key == "distance") {
      once(l, key);
      if (tok.size() != 2) fail(l.number, "distance takes one kind");
      distance(l, tok[1]);
    } else if (key == "menu" || key == "observe") {
      once(l, key);
      if (tok.size() != 1) fail(l.number, key + " opens a block");
      auto& target = key == "menu" ? sc_.menu : sc_.observations;
      for (const auto& b : block(l)) target.push_back(formula(b, b.text));
    } else if (key == "circuit") {
      once(l, key);
      circuit(l);
    } else {
      fail(l.number, "unknown directive " + key);
    }
  }

  void prior(const Line& l, const std::string& kind) {
    if (kind == "lexicographic") {
      sc_.prior.kind = PriorSpec::Kind::Lexicographic;
    } else if (kind == "ranked") {
      sc_.prior.kind = PriorSpec::Kind::Ranked;
      for (const auto& b : block(l)) {
        auto tok = split(b.text);
        if (tok.size() != 2) fail(b.number, "expected: <world> <rank>");
        Rank r = tok[1] == "inf" ? kInfiniteRank : static_cast<Rank>(number(b, tok[1]));
        sc_.prior.ranks.emplace_back(tok[0], r);
        world_lines_.emplace_back(tok[0], b.number);
      }
    } else if (kind == "preference") {
      sc_.prior.kind = PriorSpec::Kind::Preference;
      for (const auto& b : block(l)) {
        auto tok = split(b.text);
        if (tok.size() != 3 || tok[1] != "<") fail(b.number, "expected: <world> < <world>");
        sc_.prior.prefer.emplace_back(tok[0], tok[2]);
        world_lines_.emplace_back(tok[0], b.number);
        world_lines_.emplace_back(tok[2], b.number);
      }
    } else {
      fail(l.number, "unknown prior kind " + kind);
    }
  }

  void distance(const Line& l, const std::string& kind) {
    DistanceSpec d;
    if (kind == "hamming") {
      sc_.distance = d;
      return;
    }
    if (kind != "table") fail(l.number, "unknown distance kind " + kind);
    d.hamming = false;
    for (const auto& b : block(l)) {
      auto tok = split(b.text);
      if (tok[0] == "values") {
        d.values.assign(tok.begin() + 1, tok.end());
      } else if (tok[0] == "less" && tok.size() == 3) {
        d.less.emplace_back(tok[1], tok[2]);
      } else if (tok[0] == "row" && tok.size() >= 3) {
        d.rows.emplace_back(tok[1], std::vector<std::string>(tok.begin() + 2, tok.end()));
        world_lines_.emplace_back(tok[1], b.number);
      } else {
        fail(b.number, "expected values, less or row");
      }
    }
    distance_line_ = l.number;
    sc_.distance = d;
  }

  void circuit(const Line& l) {
    CircuitSpec c;
    for (const auto& b : block(l)) {
      auto tok = split(b.text);
      if (tok[0] == "gate") {
        auto arrow = std::find(tok.begin(), tok.end(), "->");
        if (tok.size() < 6 || arrow == tok.end() || arrow + 2 != tok.end())
          fail(b.number, "expected: gate <id> <KIND> <in...> -> <out>");
        Gate g;
        g.id = tok[1];
        try {
          g.kind = parse_gate_kind(tok[2]);
        } catch (const PreconditionError& e) {
          fail(b.number, e.what());
        }
        g.inputs.assign(tok.begin() + 3, arrow);
        g.output = *(arrow + 1);
        c.gates.push_back(std::move(g));
      } else if (tok[0] == "observe") {
        c.observed.assign(tok.begin() + 1, tok.end());
      } else if (tok[0] == "test") {
        TestVector t;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          auto eq = tok[i].find('=');
          if (eq == std::string::npos || (tok[i].substr(eq + 1) != "0" && tok[i].substr(eq + 1) != "1"))
            fail(b.number, "expected <line>=0|1, got " + tok[i]);
          t[tok[i].substr(0, eq)] = tok[i].substr(eq + 1) == "1";
        }
        c.tests.push_back(std::move(t));
      } else {
        fail(b.number, "expected gate, observe or test");
      }
    }
    try {
      Circuit checked(c.gates);
      if (c.tests.empty()) throw PreconditionError("the circuit block has no test");
      build_checks(checked, c);
    } catch (const PreconditionError& e) {
      fail(l.number, e.what());
    }
    sc_.circuit = std::move(c);
  }

  static void build_checks(const Circuit& circuit, const CircuitSpec& c) {
    auto inputs = circuit.input_lines();
    for (const auto& t : c.tests)
      for (const auto& line : inputs)
        if (!t.count(line)) throw PreconditionError("a test leaves input line " + line + " unset");
    for (const auto& line : c.observed) circuit.line_index(line);
  }

  void validate() {
    const std::size_t first = lines_.empty() ? 1 : lines_.front().number;
    if (sc_.circuit) {
      Vocabulary derived = Circuit(sc_.circuit->gates).vocabulary();
      if (!sc_.vocab.empty() && sc_.vocab != derived.props())
        fail(directive_line_["vocab"], "vocabulary does not match the circuit");
      if (sc_.prior.kind != PriorSpec::Kind::None) fail(directive_line_["prior"], "circuit scenarios rank by fault count");
    } else if (sc_.vocab.empty()) {
      fail(first, "missing vocab directive");
    }
    Vocabulary vocab = [&] {
      try {
        return scenario_vocabulary(sc_);
      } catch (const Error& e) {
        fail(directive_line_.count("vocab") ? directive_line_["vocab"] : first, e.what());
      }
    }();
    for (const auto& [f, line] : formula_lines_) {
      try {
        check_atoms(f, vocab);
      } catch (const UnknownAtomError& e) {
        fail(line, e.what());
      }
    }
    for (const auto& [w, line] : world_lines_)
      if (!vocab.parse_world(w)) fail(line, "'" + w + "' is not a world of the vocabulary");
    const bool lex = sc_.prior.kind == PriorSpec::Kind::Lexicographic;
    if (lex && !sc_.distance) fail(directive_line_["prior"], "lexicographic prior needs a distance block");
    if (!lex && sc_.distance) fail(directive_line_["distance"], "distance block without a lexicographic prior");
    if (!sc_.circuit && sc_.prior.kind == PriorSpec::Kind::None) fail(first, "missing prior directive");
    if (sc_.distance && !sc_.distance->hamming) {
      try {
        update_structure(sc_);
      } catch (const Error& e) {
        fail(distance_line_, e.what());
      }
    }
    if (sc_.prior.kind == PriorSpec::Kind::Ranked || sc_.prior.kind == PriorSpec::Kind::Preference) {
      try {
        world_prior(sc_);
      } catch (const Error& e) {
        fail(directive_line_["prior"], e.what());
      }
    }
    if (sc_.initial && sc_.prior.kind == PriorSpec::Kind::Ranked) {
      std::vector<Rank> ranks = world_ranks(sc_);
      Extension minimal = minimal_worlds(ranks, Extension::all(vocab.world_count()));
      if (extension(*sc_.initial, vocab) != minimal)
        fail(directive_line_["initial"], "initial belief differs from the most plausible worlds of the ranking");
    }
  }

  std::vector<Line> lines_;
  std::size_t next_ = 0;
  Scenario sc_;
  std::set<std::string> seen_;
  std::map<std::string, std::size_t> directive_line_;
  std::vector<std::pair<Formula, std::size_t>> formula_lines_;
  std::vector<std::pair<std::string, std::size_t>> world_lines_;
  std::size_t distance_line_ = 0;
};

}  // namespace

Scenario parse_scenario(std::string_view text) { return Parser(text).run(); }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read scenario " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string print_scenario(const Scenario& sc) {
  std::ostringstream out;
  if (!sc.vocab.empty()) out << "vocab " << join(sc.vocab) << '\n';
  if (sc.timestamps) out << "timestamps " << *sc.timestamps << '\n';
  if (sc.horizon) out << "horizon " << *sc.horizon << '\n';
  if (sc.initial) out << "initial " << sc.initial->str() << '\n';
  switch (sc.prior.kind) {
    case PriorSpec::Kind::None:
      break;
    case PriorSpec::Kind::Lexicographic:
      out << "prior lexicographic\n";
      break;
    case PriorSpec::Kind::Ranked:
      out << "prior ranked\n";
      for (const auto& [w, r] : sc.prior.ranks)
        out << "  " << w << ' ' << (r == kInfiniteRank ? std::string("inf") : std::to_string(r)) << '\n';
      out << "end\n";
      break;
    case PriorSpec::Kind::Preference:
      out << "prior preference\n";
      for (const auto& [a, b] : sc.prior.prefer) out << "  " << a << " < " << b << '\n';
      out << "end\n";
      break;
  }
  if (sc.distance) {
    if (sc.distance->hamming) {
      out << "distance hamming\n";
    } else {
      out << "distance table\n  values " << join(sc.distance->values) << '\n';
      for (const auto& [a, b] : sc.distance->less) out << "  less " << a << ' ' << b << '\n';
      for (const auto& [w, row] : sc.distance->rows) out << "  row " << w << ' ' << join(row) << '\n';
      out << "end\n";
    }
  }
  auto formulas = [&](const char* name, const std::vector<Formula>& fs) {
    if (fs.empty()) return;
    out << name << '\n';
    for (const auto& f : fs) out << "  " << f.str() << '\n';
    out << "end\n";
  };
  formulas("menu", sc.menu);
  formulas("observe", sc.observations);
  if (sc.circuit) {
    out << "circuit\n";
    for (const auto& g : sc.circuit->gates)
      out << "  gate " << g.id << ' ' << to_string(g.kind) << ' ' << join(g.inputs) << " -> " << g.output << '\n';
    if (!sc.circuit->observed.empty()) out << "  observe " << join(sc.circuit->observed) << '\n';
    for (const auto& t : sc.circuit->tests) {
      out << "  test";
      for (const auto& [line, v] : t) out << ' ' << line << '=' << (v ? 1 : 0);
      out << '\n';
    }
    out << "end\n";
  }
  return out.str();
}

Vocabulary scenario_vocabulary(const Scenario& sc) {
  if (sc.circuit) return Circuit(sc.circuit->gates).vocabulary();
  if (sc.timestamps) return Vocabulary::timestamped(sc.vocab, *sc.timestamps);
  return Vocabulary(sc.vocab);
}

int scenario_horizon(const Scenario& sc) {
  if (sc.horizon) return *sc.horizon;
  if (sc.circuit) return static_cast<int>(sc.circuit->tests.size());
  return static_cast<int>(scenario_observations(sc).size());
}

std::vector<Rank> world_ranks(const Scenario& sc) {
  if (sc.prior.kind != PriorSpec::Kind::Ranked) throw PreconditionError("the scenario has no ranked prior");
  Vocabulary vocab = scenario_vocabulary(sc);
  std::vector<Rank> ranks(vocab.world_count(), kInfiniteRank);
  for (const auto& [name, r] : sc.prior.ranks) {
    auto w = vocab.parse_world(name);
    if (!w) throw PreconditionError("unknown world " + name);
    ranks[w->index] = r;
  }
  if (std::all_of(ranks.begin(), ranks.end(), [](Rank r) { return r == kInfiniteRank; }))
    throw PreconditionError("every world is implausible");
  return ranks;
}

PlausibilityMeasure world_prior(const Scenario& sc) {
  if (sc.prior.kind == PriorSpec::Kind::Ranked) return PlausibilityMeasure::ranked(world_ranks(sc));
  if (sc.prior.kind != PriorSpec::Kind::Preference) throw PreconditionError("the scenario has no prior over worlds");
  Vocabulary vocab = scenario_vocabulary(sc);
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& [a, b] : sc.prior.prefer) {
    auto wa = vocab.parse_world(a), wb = vocab.parse_world(b);
    if (!wa || !wb) throw PreconditionError("unknown world in preference " + a + " < " + b);
    order.emplace_back(wa->index, wb->index);
  }
  return from_preference(vocab.world_count(), order);
}

UpdateStructure update_structure(const Scenario& sc) {
  if (!sc.distance) throw PreconditionError("the scenario has no distance block");
  Vocabulary vocab = scenario_vocabulary(sc);
  if (sc.distance->hamming) return UpdateStructure::hamming(vocab);
  const DistanceSpec& d = *sc.distance;
  if (d.values.empty() || d.values.front() != "0") throw PreconditionError("distance values must start with 0");
  auto value = [&](const std::string& name) -> Distance {
    if (name == "inf") return kImpossible;
    auto it = std::find(d.values.begin(), d.values.end(), name);
    if (it == d.values.end()) throw PreconditionError("unknown distance value " + name);
    return static_cast<Distance>(it - d.values.begin());
  };
  std::vector<std::pair<Distance, Distance>> less;
  for (const auto& [a, b] : d.less) less.emplace_back(value(a), value(b));
  DistanceOrder order(d.values, less);
  const std::size_t wc = vocab.world_count();
  std::vector<Distance> table(wc * wc, kImpossible);
  std::vector<bool> filled(wc, false);
  for (const auto& [name, row] : d.rows) {
    auto w = vocab.parse_world(name);
    if (!w) throw PreconditionError("unknown world " + name);
    if (row.size() != wc) throw PreconditionError("row " + name + " needs " + std::to_string(wc) + " distances");
    if (filled[w->index]) throw PreconditionError("duplicate row " + name);
    filled[w->index] = true;
    for (std::size_t to = 0; to < wc; ++to) table[w->index * wc + to] = value(row[to]);
  }
  for (std::uint32_t w = 0; w < wc; ++w)
    if (!filled[w]) throw PreconditionError("no distance row for world " + vocab.world_name(World{w}));
  return UpdateStructure(std::move(vocab), std::move(order), std::move(table));
}

Circuit scenario_circuit(const Scenario& sc) {
  if (!sc.circuit) throw PreconditionError("the scenario has no circuit block");
  return Circuit(sc.circuit->gates);
}

std::vector<Formula> scenario_menu(const Scenario& sc) {
  if (!sc.menu.empty()) return sc.menu;
  Vocabulary vocab = scenario_vocabulary(sc);
  std::vector<Formula> menu{Formula::truth()};
  for (std::size_t p = 0; p < vocab.atom_count(); ++p) {
    Formula a = Formula::atom(vocab.atom_at(p));
    menu.push_back(a);
    menu.push_back(!a);
  }
  return menu;
}

LocalState scenario_observations(const Scenario& sc) {
  LocalState out;
  if (sc.prior.kind == PriorSpec::Kind::Lexicographic && sc.initial) out.push_back(*sc.initial);
  out.insert(out.end(), sc.observations.begin(), sc.observations.end());
  return out;
}

System scenario_system(const Scenario& sc, int horizon) {
  if (sc.circuit) {
    DiagnosisSystem d = build_diag_system(scenario_circuit(sc), sc.circuit->tests, sc.circuit->observed);
    return d.system;
  }
  if (sc.prior.kind == PriorSpec::Kind::Lexicographic)
    return system_from_update(update_structure(sc), horizon, scenario_menu(sc));
  return static_system(scenario_vocabulary(sc), world_prior(sc), scenario_menu(sc), horizon);
}

}  // namespace belief
