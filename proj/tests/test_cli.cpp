#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "belief/commands.hpp"

using namespace belief;

namespace {

std::string source(const std::string& rel) { return std::string(BELIEF_SOURCE_DIR) + "/" + rel; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CommandOptions on(const std::string& scenario) {
  CommandOptions o;
  o.scenario = source("scenarios/" + scenario);
  return o;
}

struct Process {
  int exit_code;
  std::string output;
};

// Runs beliefctl with the given arguments, capturing stdout and stderr.
Process beliefctl(const std::string& args) {
  std::string cmd = std::string(BELIEFCTL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Commands, NamesAreTheDocumentedSet) {
  std::vector<std::string> expected{"revise",    "update",  "check-agm", "check-km", "check-rev",    "check-upd",
                                    "check-bcs", "statify", "diagnose",  "borrowed-car", "trace"};
  auto names = command_names();
  std::sort(names.begin(), names.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(names, expected);
}

TEST(Commands, CheckAgmPassesOnARankedScenario) {
  auto r = run_command("check-agm", on("ranked_revision.scn"));
  EXPECT_EQ(r.exit_code, 0);
  for (const char* row : {"R1 PASS", "R4 PASS", "R8 PASS"}) EXPECT_NE(r.output.find(row), std::string::npos);
}

TEST(Commands, FailuresCarryWitnesses) {
  auto r = run_command("check-rev", on("preference.scn"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("REV2 FAIL WITNESS: "), std::string::npos);
  CommandOptions machine = on("preference.scn");
  machine.format = ReportFormat::Machine;
  auto m = run_command("check-rev", machine);
  EXPECT_NE(m.output.find("CHECK\tREV2\tFAIL\t"), std::string::npos);
}

TEST(Commands, TracePrintsOneLinePerTime) {
  auto r = run_command("trace", on("ranked_revision.scn"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output,
            "t=0  obs: -  Bel: rain & wet\n"
            "t=1  obs: !rain  Bel: !rain & !wet | !rain & wet\n"
            "t=2  obs: !wet  Bel: !rain & !wet\n");
}

TEST(Commands, BorrowedCarMatchesTheGoldenReport) {
  auto r = run_command("borrowed-car", CommandOptions{});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, read_file(source("tests/golden/borrowed_car.txt")));
  std::string last = r.output.substr(r.output.rfind("t=4 explanation"));
  EXPECT_NE(last.find("through time 3"), std::string::npos);
  EXPECT_EQ(run_command("borrowed-car", on("borrowed_car.scn")).output, r.output);
}

TEST(Commands, ReportsAreDeterministic) {
  for (const char* cmd : {"check-bcs", "statify", "check-rev", "trace"}) {
    auto a = run_command(cmd, on("preference.scn"));
    auto b = run_command(cmd, on("preference.scn"));
    EXPECT_EQ(a.output, b.output) << cmd;
  }
}

TEST(Commands, DiagnoseAndUpdateScenarios) {
  EXPECT_EQ(run_command("diagnose", on("three_gates.scn")).exit_code, 0);
  EXPECT_EQ(run_command("update", on("borrowed_car.scn")).exit_code, 0);
  EXPECT_EQ(run_command("check-km", on("borrowed_car.scn")).exit_code, 0);
  CommandOptions relaxed = on("table_distance.scn");
  EXPECT_EQ(run_command("check-upd", relaxed).exit_code, 2);
  relaxed.relaxed = true;
  EXPECT_EQ(run_command("check-upd", relaxed).exit_code, 0);
  EXPECT_EQ(run_command("check-km", relaxed).exit_code, 1);  // U3 with unreachable worlds
}

TEST(Commands, UsageErrorsExitTwo) {
  EXPECT_EQ(run_command("revise", on("borrowed_car.scn")).exit_code, 2);
  EXPECT_EQ(run_command("diagnose", on("ranked_revision.scn")).exit_code, 2);
  EXPECT_EQ(run_command("no-such-command", on("ranked_revision.scn")).exit_code, 2);
  EXPECT_EQ(run_command("trace", CommandOptions{}).exit_code, 2);
  EXPECT_EQ(run_command("trace", on("missing.scn")).exit_code, 2);
}

TEST(Beliefctl, ExitCodes) {
  EXPECT_EQ(beliefctl("check-agm --scenario " + source("scenarios/ranked_revision.scn")).exit_code, 0);
  EXPECT_EQ(beliefctl("check-rev --scenario " + source("scenarios/preference.scn")).exit_code, 1);
  EXPECT_EQ(beliefctl("check-agm").exit_code, 2);
  EXPECT_EQ(beliefctl("").exit_code, 2);
  EXPECT_EQ(beliefctl("trace --scenario " + source("scenarios/ranked_revision.scn") + " --format xml").exit_code, 2);
}

TEST(Beliefctl, MachineFormatAndGolden) {
  auto p = beliefctl("borrowed-car");
  EXPECT_EQ(p.exit_code, 0);
  EXPECT_EQ(p.output, read_file(source("tests/golden/borrowed_car.txt")));
  auto m = beliefctl("borrowed-car --format machine");
  EXPECT_NE(m.output.find("CHECK\tMU2\tPASS\t"), std::string::npos);
  EXPECT_NE(m.output.find("TRACE\t4\t"), std::string::npos);
  EXPECT_NE(m.output.find("EXPLAIN\t"), std::string::npos);
}

TEST(Beliefctl, StatifyWritesTheScenario) {
  std::string out = ::testing::TempDir() + "statified.scn";
  auto p = beliefctl("statify --scenario " + source("scenarios/preference.scn") + " --output " + out);
  EXPECT_EQ(p.exit_code, 0);
  Scenario sc = load_scenario(out);
  ASSERT_TRUE(sc.timestamps);
  EXPECT_EQ(*sc.timestamps, 1);
  EXPECT_EQ(sc.prior.kind, PriorSpec::Kind::Preference);
}
