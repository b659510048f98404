#pragma once

#include <string>
#include <vector>

namespace cohen {

// Verification outcome: findings rather than exceptions. An empty failure
// list is a pass. Notes carry coverage statements (what was checked, to what
// depth, relative to which scheduled family).
struct Report {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool pass() const { return failures.empty(); }

  void fail(std::string msg) { failures.push_back(std::move(msg)); }
  void note(std::string msg) { notes.push_back(std::move(msg)); }

  std::string summary() const;
};

}  // namespace cohen
