#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "belief/report.hpp"
#include "belief/scenario.hpp"
#include "belief/update.hpp"

namespace belief {

struct CommandOptions {
  std::optional<std::string> scenario;  // path
  std::optional<int> horizon;
  std::optional<std::size_t> budget;    // enumeration cap for the validators
  bool relaxed = false;                 // allow impossible transitions
  ReportFormat format = ReportFormat::Text;
  std::optional<std::string> output;    // statify writes the statified scenario here
};

struct CommandResult {
  int exit_code = 0;  // 0 all checks pass, 1 some check fails, 2 usage or input error
  std::string output;
};

const std::vector<std::string>& command_names();

// Loads the scenario named in the options, except borrowed-car, which falls
// back to the bundled one.
CommandResult run_command(const std::string& command, const CommandOptions& options);
CommandResult run_command(const std::string& command, const Scenario& sc, const CommandOptions& options);

std::string format_trace(const std::vector<TraceStep>& trace, const Vocabulary& vocab, ReportFormat format);

// The bundled borrowed-car scenario.
const std::string& borrowed_car_text();
BorrowedCar borrowed_car_from(const Scenario& sc);

}  // namespace belief
