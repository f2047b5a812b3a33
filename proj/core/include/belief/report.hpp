#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace belief {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

enum class ReportFormat { Text, Machine };

// Ordered verdicts plus free-form notes. Text lines look like
// "R2 FAIL WITNESS: ..."; machine lines are CHECK<TAB>NAME<TAB>PASS|FAIL<TAB>WITNESS.
class Report {
 public:
  void add(std::string name, bool passed, std::string witness = {});
  void note(std::string line);
  void merge(const Report& other);

  bool all_passed() const;
  bool has(const std::string& name) const;
  bool passed(const std::string& name) const;  // throws if absent
  const CheckResult& result(const std::string& name) const;
  const std::vector<CheckResult>& results() const { return results_; }
  const std::vector<std::string>& notes() const { return notes_; }

  std::string render(ReportFormat format = ReportFormat::Text) const;

 private:
  std::vector<CheckResult> results_;
  std::vector<std::string> notes_;
};

// Collects the first counterexample of one named check and counts the rest.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}
  void check(bool ok, const std::string& witness) {
    ++instances_;
    if (ok) return;
    if (violations_++ == 0) first_ = witness;
  }
  template <class F>
  void check_lazy(bool ok, F&& witness) {
    ++instances_;
    if (ok) return;
    if (violations_++ == 0) first_ = witness();
  }
  std::size_t instances() const { return instances_; }
  std::size_t violations() const { return violations_; }
  void emit(Report& report) const;

 private:
  std::string name_;
  std::size_t instances_ = 0;
  std::size_t violations_ = 0;
  std::string first_;
};

}  // namespace belief
