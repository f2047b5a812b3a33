#include "belief/commands.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "belief/diagnosis.hpp"
#include "belief/revision.hpp"
#include "belief/synthesis.hpp"

namespace belief {

namespace {

// A command that cannot run on the given scenario or flags.
struct UsageError : Error {
  using Error::Error;
};

std::string dnf(const Extension& e, const Vocabulary& vocab) { return formula_of_extension(e, vocab).str(); }

CommandResult verdict(const Report& report, std::string prefix, ReportFormat format) {
  return {report.all_passed() ? 0 : 1, std::move(prefix) + report.render(format)};
}

int horizon_for(const Scenario& sc, const CommandOptions& options) {
  int h = options.horizon.value_or(scenario_horizon(sc));
  if (h < 0) throw UsageError("horizon must be nonnegative");
  return h;
}

std::vector<Extension> semantic_inputs(const Vocabulary& vocab, std::size_t max_worlds) {
  if (vocab.world_count() <= max_worlds) return all_subsets(Extension::all(vocab.world_count()));
  std::set<Extension> inputs;
  for (const auto& f : formulas_up_to_depth(vocab, 1)) inputs.insert(extension(f, vocab));
  for (World w : enumerate_worlds(vocab)) inputs.insert(Extension::of(vocab.world_count(), {w.index}));
  return {inputs.begin(), inputs.end()};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

bool is_ranked(const Scenario& sc) { return sc.prior.kind == PriorSpec::Kind::Ranked; }
bool is_update(const Scenario& sc) { return sc.prior.kind == PriorSpec::Kind::Lexicographic; }

CommandResult revise(const Scenario& sc, const CommandOptions& options) {
  require(is_ranked(sc), "revise needs a ranked prior");
  Vocabulary vocab = scenario_vocabulary(sc);
  auto ranks = world_ranks(sc);
  RevisionOperator op = RevisionOperator::from_ranking(ranks);
  Extension k = minimal_worlds(ranks, Extension::all(vocab.world_count()));
  std::ostringstream out;
  auto line = [&](std::size_t t, const std::string& input) {
    if (options.format == ReportFormat::Machine)
      out << "TRACE\t" << t << '\t' << input << '\t' << dnf(k, vocab) << '\n';
    else
      out << "t=" << t << "  revise by: " << input << "  K: " << dnf(k, vocab) << '\n';
  };
  line(0, "-");
  for (std::size_t t = 0; t < sc.observations.size(); ++t) {
    k = op(k, extension(sc.observations[t], vocab));
    line(t + 1, sc.observations[t].str());
  }
  return {0, out.str()};
}

CommandResult update(const Scenario& sc, const CommandOptions& options) {
  require(sc.distance.has_value(), "update needs a distance block");
  UpdateStructure u = update_structure(sc);
  require(options.relaxed || !u.has_impossible(), "impossible transitions need --relaxed-transitions");
  const Vocabulary& vocab = u.vocab();
  Extension mu = sc.initial ? extension(*sc.initial, vocab) : Extension::all(vocab.world_count());
  std::ostringstream out;
  auto line = [&](std::size_t t, const std::string& input) {
    if (options.format == ReportFormat::Machine)
      out << "TRACE\t" << t << '\t' << input << '\t' << dnf(mu, vocab) << '\n';
    else
      out << "t=" << t << "  update by: " << input << "  mu: " << dnf(mu, vocab) << '\n';
  };
  line(0, "-");
  for (std::size_t t = 0; t < sc.observations.size(); ++t) {
    mu = min_u(u, mu, extension(sc.observations[t], vocab));
    line(t + 1, sc.observations[t].str());
  }
  return {0, out.str()};
}

CommandResult check_agm_command(const Scenario& sc, const CommandOptions& options) {
  require(is_ranked(sc), "check-agm needs a ranked prior");
  Vocabulary vocab = scenario_vocabulary(sc);
  auto ranks = world_ranks(sc);
  Extension k = minimal_worlds(ranks, Extension::all(vocab.world_count()));
  Report report = check_agm(RevisionOperator::from_ranking(ranks), k, semantic_inputs(vocab, 8), vocab);
  return verdict(report, "", options.format);
}

CommandResult check_km_command(const Scenario& sc, const CommandOptions& options) {
  require(sc.distance.has_value(), "check-km needs a distance block");
  UpdateStructure u = update_structure(sc);
  require(options.relaxed || !u.has_impossible(), "impossible transitions need --relaxed-transitions");
  UpdateOperator op = [&u](const Extension& mu, const Extension& phi) { return min_u(u, mu, phi); };
  Report report = check_km(op, semantic_inputs(u.vocab(), 4), u.vocab());
  if (options.relaxed) report.note("U1-U8 reported as they stand with impossible transitions");
  return verdict(report, "", options.format);
}

RevOptions rev_options(const CommandOptions& options) {
  RevOptions r;
  if (options.budget) r.sequence_budget = *options.budget;
  return r;
}

CommandResult check_rev(const Scenario& sc, const CommandOptions& options) {
  System sys = scenario_system(sc, horizon_for(sc, options));
  RevOptions r = rev_options(options);
  if (sc.circuit) {
    Circuit c = scenario_circuit(sc);
    for (std::size_t g = 0; g < c.gates().size(); ++g) r.extra_observations.push_back(c.fault_atom(g));
  }
  return verdict(validate_rev(sys, r), "", options.format);
}

CommandResult check_upd(const Scenario& sc, const CommandOptions& options) {
  require(is_update(sc), "check-upd needs a lexicographic prior");
  UpdateStructure u = update_structure(sc);
  require(options.relaxed || !u.has_impossible(), "impossible transitions need --relaxed-transitions");
  System sys = system_from_update(u, horizon_for(sc, options), scenario_menu(sc));
  UpdOptions opt;
  opt.relaxed = options.relaxed;
  if (options.budget) opt.pair_budget = *options.budget;
  Report report = validate_upd(sys, u, opt);
  report.merge(check_update_correspondence(sys, u, scenario_menu(sc)));
  report.merge(check_correctness_preservation(sys, u));
  return verdict(report, "", options.format);
}

CommandResult check_bcs(const Scenario& sc, const CommandOptions& options) {
  System sys = scenario_system(sc, horizon_for(sc, options));
  Report report = validate_bcs(sys);
  try {
    report.merge(check_prior_local_rule(sys));
  } catch (const BudgetExceeded& e) {
    report.note(std::string("PRIOR-LOCAL: skipped, ") + e.what());
  }
  return verdict(report, "", options.format);
}

std::string statified_scenario(const Scenario& sc, const StatifiedSystem& star) {
  Scenario out;
  out.vocab = sc.vocab;
  out.timestamps = star.horizon;
  out.horizon = star.inner.horizon();
  out.prior.kind = PriorSpec::Kind::Preference;
  const Vocabulary& vocab = star.inner.vocab();
  const auto& prior = star.inner.prior();
  std::set<std::uint32_t> worlds;
  std::vector<std::size_t> any_run(vocab.world_count(), star.inner.run_count());
  for (std::size_t r = 0; r < star.inner.run_count(); ++r) any_run[star.inner.runs()[r].envs[0].index] = r;
  std::size_t pairs = 0;
  for (std::uint32_t a = 0; a < vocab.world_count(); ++a)
    for (std::uint32_t b = 0; b < vocab.world_count(); ++b) {
      if (any_run[a] == star.inner.run_count() || any_run[b] == star.inner.run_count()) continue;
      if (!prior.prefers(any_run[a], any_run[b])) continue;
      if (++pairs > 200000) throw BudgetExceeded("statified prior has more than 200000 strict pairs");
      out.prior.prefer.emplace_back(vocab.world_name(World{a}), vocab.world_name(World{b}));
    }
  for (const auto& f : star.inner.observations()) out.menu.push_back(f);
  LocalState obs = scenario_observations(sc);
  for (std::size_t k = 0; k < obs.size(); ++k) out.observations.push_back(timestamp(obs[k], static_cast<int>(k) + 1));
  return print_scenario(out);
}

CommandResult statify_command(const Scenario& sc, const CommandOptions& options) {
  require(!sc.circuit && !sc.timestamps, "statify needs a plain update or revision scenario");
  int h = horizon_for(sc, options);
  System sys = scenario_system(sc, h);
  StatifiedSystem star = statify(sys, h);
  Report report = verify_statification(sys, star);
  report.merge(check_belief_correspondence(sys, star, sys.vocab().atom_count() <= 2 ? 2 : 1));
  std::string text;
  std::string file;
  try {
    file = statified_scenario(sc, star);
  } catch (const BudgetExceeded& e) {
    report.note(std::string("statified scenario not written: ") + e.what());
  }
  if (!file.empty()) {
    if (options.output) {
      std::ofstream out(*options.output);
      if (!out) throw UsageError("cannot write " + *options.output);
      out << file;
      report.note("statified scenario written to " + *options.output);
    } else {
      text = file + "\n";
    }
  }
  return verdict(report, text, options.format);
}

CommandResult diagnose(const Scenario& sc, const CommandOptions& options) {
  require(sc.circuit.has_value(), "diagnose needs a circuit block");
  DiagnosisSystem d = build_diag_system(scenario_circuit(sc), sc.circuit->tests, sc.circuit->observed);
  std::ostringstream out;
  LocalState prefix;
  auto line = [&](std::size_t t, const std::string& obs) {
    std::string text = describe(diag(d, prefix), d.circuit);
    if (options.format == ReportFormat::Machine)
      out << "TRACE\t" << t << '\t' << obs << '\t' << text << '\n';
    else
      out << "t=" << t << "  obs: " << obs << "  Diag: " << text << '\n';
  };
  line(0, "-");
  for (std::size_t t = 0; t < sc.observations.size() && t < sc.circuit->tests.size(); ++t) {
    prefix.push_back(sc.observations[t]);
    if (!d.system.attainable(prefix)) throw UsageError("observation " + describe(prefix) + " cannot occur");
    line(t + 1, sc.observations[t].str());
  }
  Report report = check_prop_diag(d);
  report.merge(check_fault_projection(d, fault_projection(d)));
  RevOptions r = rev_options(options);
  for (std::size_t g = 0; g < d.circuit.gates().size(); ++g) r.extra_observations.push_back(d.circuit.fault_atom(g));
  Report rev = validate_rev(d.system, r);
  for (const auto& row : rev.results())
    report.note("diagnosis system " + row.name + (row.passed ? " PASS" : " FAIL WITNESS: " + row.witness));
  return verdict(report, out.str(), options.format);
}

std::string describe_world(World w, const Vocabulary& vocab) { return characteristic_formula(w, vocab).str(); }

CommandResult borrowed_car_command(const Scenario& sc, const CommandOptions& options) {
  BorrowedCar bc = borrowed_car_from(sc);
  const Vocabulary& vocab = bc.system.vocab();
  std::string text = format_trace(belief_trace(bc.system, bc.observations), vocab, options.format);
  Report report = borrowed_car_checks(bc);
  auto histories = most_plausible_histories(bc.system, bc.observations);
  std::set<std::string> kept, reached;
  for (const auto& h : histories) {
    kept.insert(describe_world(h[3], vocab));
    reached.insert(describe_world(h[4], vocab));
  }
  auto list = [](const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : " or ") + x;
    return out;
  };
  std::string explanation = "t=4 explanation: the most plausible runs keep " + list(kept) +
                            " through time 3 and move to " + list(reached) + " between times 3 and 4\n";
  if (options.format == ReportFormat::Machine) explanation = "EXPLAIN\t" + explanation;
  return {report.all_passed() ? 0 : 1, text + report.render(options.format) + explanation};
}

CommandResult trace(const Scenario& sc, const CommandOptions& options) {
  LocalState obs = scenario_observations(sc);
  int h = options.horizon.value_or(std::max<int>(scenario_horizon(sc), static_cast<int>(obs.size())));
  require(h >= static_cast<int>(obs.size()), "the horizon is shorter than the observation sequence");
  System sys = scenario_system(sc, h);
  std::vector<TraceStep> steps = belief_trace(sys, obs);
  if (!is_update(sc) && !sc.circuit) {
    // Revision systems answer off-menu sequences through their epistemic state.
    LocalState prefix;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      if (t > 0) prefix.push_back(obs[t - 1]);
      steps[t].beliefs = epistemic_bel(sys, prefix);
    }
  }
  return {0, format_trace(steps, sys.vocab(), options.format)};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"revise",    "update",    "check-agm", "check-km",
                                              "check-rev", "check-upd", "check-bcs", "statify",
                                              "diagnose",  "borrowed-car", "trace"};
  return names;
}

std::string format_trace(const std::vector<TraceStep>& trace, const Vocabulary& vocab, ReportFormat format) {
  std::ostringstream out;
  for (const auto& step : trace) {
    std::string obs = step.observation ? step.observation->str() : "-";
    if (format == ReportFormat::Machine)
      out << "TRACE\t" << step.time << '\t' << obs << '\t' << dnf(step.beliefs, vocab) << '\n';
    else
      out << "t=" << step.time << "  obs: " << obs << "  Bel: " << dnf(step.beliefs, vocab) << '\n';
  }
  return out.str();
}

const std::string& borrowed_car_text() {
  static const std::string text =
      "vocab car_parked_outside fuel_tank_full\n"
      "horizon 4\n"
      "initial car_parked_outside & fuel_tank_full\n"
      "prior lexicographic\n"
      "distance hamming\n"
      "menu\n"
      "  true\n"
      "  car_parked_outside & fuel_tank_full\n"
      "  car_parked_outside\n"
      "  !fuel_tank_full\n"
      "end\n"
      "observe\n"
      "  true\n"
      "  car_parked_outside\n"
      "  !fuel_tank_full\n"
      "end\n";
  return text;
}

BorrowedCar borrowed_car_from(const Scenario& sc) {
  if (!is_update(sc)) throw UsageError("borrowed-car needs a lexicographic scenario");
  UpdateStructure u = update_structure(sc);
  LocalState obs = scenario_observations(sc);
  System sys = system_from_update(u, scenario_horizon(sc), scenario_menu(sc));
  return BorrowedCar{std::move(u), std::move(sys), std::move(obs)};
}

CommandResult run_command(const std::string& command, const CommandOptions& options) {
  try {
    if (!options.scenario) {
      if (command == "borrowed-car") return run_command(command, parse_scenario(borrowed_car_text()), options);
      return {2, "error: --scenario is required for " + command + "\n"};
    }
    return run_command(command, load_scenario(*options.scenario), options);
  } catch (const Error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

CommandResult run_command(const std::string& command, const Scenario& sc, const CommandOptions& options) {
  try {
    if (command == "revise") return revise(sc, options);
    if (command == "update") return update(sc, options);
    if (command == "check-agm") return check_agm_command(sc, options);
    if (command == "check-km") return check_km_command(sc, options);
    if (command == "check-rev") return check_rev(sc, options);
    if (command == "check-upd") return check_upd(sc, options);
    if (command == "check-bcs") return check_bcs(sc, options);
    if (command == "statify") return statify_command(sc, options);
    if (command == "diagnose") return diagnose(sc, options);
    if (command == "borrowed-car") return borrowed_car_command(sc, options);
    if (command == "trace") return trace(sc, options);
    return {2, "error: unknown command " + command + "\n"};
  } catch (const Error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace belief
