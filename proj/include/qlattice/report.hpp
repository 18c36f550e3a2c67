#ifndef QLATTICE_REPORT_HPP
#define QLATTICE_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlattice {

/// One named identity checked over some number of instances. `detail`
/// holds the first counterexample seen, or a short summary when passing.
struct Check {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  std::string detail;
};

/// Ordered collection of checks. Repeated `record` calls with the same name
/// fold into a single entry that fails as soon as any instance fails.
class Report {
 public:
  void record(const std::string& name, bool ok, const std::string& detail = {}) {
    Check& check = find_or_add(name);
    ++check.instances;
    if (!ok && check.passed) {
      check.passed = false;
      check.detail = detail;
    }
  }

  // Defers building the counterexample string until it is needed.
  template <class DetailFn>
  void expect(const std::string& name, bool ok, DetailFn&& detail) {
    Check& check = find_or_add(name);
    ++check.instances;
    if (!ok && check.passed) {
      check.passed = false;
      check.detail = std::forward<DetailFn>(detail)();
    }
  }

  // Lists a check even if no instance arises, e.g. an empty family of pairs.
  void declare(const std::string& name) { find_or_add(name); }

  void note(const std::string& name, const std::string& detail) {
    Check& check = find_or_add(name);
    if (check.passed) check.detail = detail;
  }

  void merge(const Report& other) {
    for (const auto& c : other.checks_) {
      Check& mine = find_or_add(c.name);
      mine.instances += c.instances;
      if (!c.passed && mine.passed) {
        mine.passed = false;
        mine.detail = c.detail;
      } else if (mine.passed && mine.detail.empty()) {
        mine.detail = c.detail;
      }
    }
  }

  [[nodiscard]] bool passed() const {
    return std::all_of(checks_.begin(), checks_.end(),
                       [](const Check& c) { return c.passed; });
  }

  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }

  [[nodiscard]] const Check* find(const std::string& name) const {
    for (const auto& c : checks_) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  [[nodiscard]] std::optional<Check> first_failure() const {
    for (const auto& c : checks_) {
      if (!c.passed) return c;
    }
    return std::nullopt;
  }

 private:
  Check& find_or_add(const std::string& name) {
    for (auto& c : checks_) {
      if (c.name == name) return c;
    }
    checks_.push_back(Check{name, true, 0, {}});
    return checks_.back();
  }

  std::vector<Check> checks_;
};

}  // namespace qlattice

#endif  // QLATTICE_REPORT_HPP
