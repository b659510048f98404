#include "cohen/report.hpp"

namespace cohen {

std::string Report::summary() const {
  std::string out = pass() ? "PASS" : "FAIL";
  for (const auto& f : failures) out += "\n  failure: " + f;
  for (const auto& n : notes) out += "\n  note: " + n;
  return out;
}

}  // namespace cohen
