#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace angled {

struct Issue {
  std::string kind;
  std::string message;
};

/// A list of violated invariants; an empty report means the input passed.
struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }

  void add(std::string kind, std::string message) {
    issues.push_back({std::move(kind), std::move(message)});
  }

  bool contains(const std::string& kind) const {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const Issue& issue) { return issue.kind == kind; });
  }

  friend std::ostream& operator<<(std::ostream& os, const ValidationReport& report) {
    if (report.ok()) return os << "OK\n";
    for (const auto& issue : report.issues) os << issue.kind << ": " << issue.message << "\n";
    return os;
  }
};

}  // namespace angled
