#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gcred {

/// Invalid mathematical input: a violated precondition of an operation.
class GcredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations disagreed; indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;  // witness on failure, remark on success
};

class ValidationReport {
 public:
  void add(std::string name, bool passed, std::string detail = {}) {
    checks_.push_back({std::move(name), passed, std::move(detail)});
  }
  void add(Check check) { checks_.push_back(std::move(check)); }

  /// Appends the checks of another report, prefixing their names.
  void append(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_) checks_.push_back({prefix + c.name, c.passed, c.detail});
  }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }

  const std::vector<Check>& checks() const { return checks_; }

  const Check& at(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return c;
    throw std::out_of_range("no check named '" + name + "'");
  }

  bool has(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return true;
    return false;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace gcred
