// beliefctl: batch front end for the belief change toolkit.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "belief/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Belief revision and update over plausibility systems"};
  app.require_subcommand(1);
  belief::CommandOptions options;
  std::string format = "text";

  const std::map<std::string, std::string> blurbs{
      {"revise", "revise the ranking's belief set by each observation in turn"},
      {"update", "update by each observation in turn with the distance structure"},
      {"check-agm", "R1-R8 for the operator of a ranked prior"},
      {"check-km", "U1-U8 for the update structure"},
      {"check-rev", "REV1-REV4 on the built system"},
      {"check-upd", "UPD1-UPD4 on the built system"},
      {"check-bcs", "BCS1-BCS5 on the built system"},
      {"statify", "timestamp the system and verify the result"},
      {"diagnose", "minimal fault sets along the observed test vectors"},
      {"borrowed-car", "run the bundled borrowed-car trace"},
      {"trace", "beliefs of the built system after each observation"},
  };

  for (const auto& name : belief::command_names()) {
    auto blurb = blurbs.find(name);
    CLI::App* sub = app.add_subcommand(name, blurb == blurbs.end() ? std::string{} : blurb->second);
    auto* scenario = sub->add_option("--scenario", options.scenario, "scenario file");
    if (name != "borrowed-car") scenario->required();
    sub->add_option("--horizon", options.horizon, "number of observation steps");
    sub->add_option("--budget", options.budget, "enumeration cap for the validators");
    sub->add_flag("--relaxed-transitions", options.relaxed, "allow impossible transitions");
    sub->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    if (name == "statify") sub->add_option("--output", options.output, "where to write the statified scenario");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  options.format = format == "machine" ? belief::ReportFormat::Machine : belief::ReportFormat::Text;
  const std::string command = app.get_subcommands().front()->get_name();
  belief::CommandResult result = belief::run_command(command, options);
  (result.exit_code == 2 ? std::cerr : std::cout) << result.output;
  return result.exit_code;
}
