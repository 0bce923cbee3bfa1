#pragma once

#include <string>
#include <vector>

namespace dioph {

// One exact check; both sides are kept as strings so failures can be shown.
struct Check {
  std::string name;
  long index = 0;
  bool pass = false;
  std::string lhs, rhs;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, long index, bool pass, std::string lhs = "", std::string rhs = "") {
    checks.push_back({std::move(name), index, pass, std::move(lhs), std::move(rhs)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c);
    return out;
  }
};

}  // namespace dioph
