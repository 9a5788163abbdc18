#include "covlab/report.hpp"

#include <sstream>

namespace covlab {

void Report::add(std::string name, bool ok, std::string detail) {
  if (!ok) passed = false;
  checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json Report::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["operation"] = operation;
  j["passed"] = passed;
  j["summary"] = summary;
  auto& cs = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(std::move(e));
  }
  j["data"] = data;
  if (with_timing) j["seconds"] = seconds;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << operation << ": " << (passed ? "PASS" : "FAIL");
  if (!summary.empty()) os << " - " << summary;
  os << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "ok" : "FAILED") << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace covlab
