#include "belief/report.hpp"

#include <algorithm>

#include "belief/error.hpp"

namespace belief {

void Report::add(std::string name, bool passed, std::string witness) {
  results_.push_back(CheckResult{std::move(name), passed, passed ? std::string{} : std::move(witness)});
}

void Report::note(std::string line) { notes_.push_back(std::move(line)); }

void Report::merge(const Report& other) {
  results_.insert(results_.end(), other.results_.begin(), other.results_.end());
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

bool Report::all_passed() const {
  return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.passed; });
}

bool Report::has(const std::string& name) const {
  return std::any_of(results_.begin(), results_.end(),
                     [&](const CheckResult& r) { return r.name == name; });
}

const CheckResult& Report::result(const std::string& name) const {
  for (const auto& r : results_)
    if (r.name == name) return r;
  throw Error("report has no check named " + name);
}

bool Report::passed(const std::string& name) const { return result(name).passed; }

std::string Report::render(ReportFormat format) const {
  std::string out;
  for (const auto& r : results_) {
    if (format == ReportFormat::Machine) {
      out += "CHECK\t" + r.name + "\t" + (r.passed ? "PASS" : "FAIL") + "\t" + r.witness + "\n";
    } else {
      out += r.name + (r.passed ? " PASS" : " FAIL");
      if (!r.passed) out += " WITNESS: " + r.witness;
      out += "\n";
    }
  }
  for (const auto& n : notes_) out += (format == ReportFormat::Machine ? "NOTE\t" : "# ") + n + "\n";
  return out;
}

void Tally::emit(Report& report) const {
  std::string witness = first_;
  if (violations_ > 1) witness += " (" + std::to_string(violations_) + " violations)";
  report.add(name_, violations_ == 0, witness);
}

}  // namespace belief
