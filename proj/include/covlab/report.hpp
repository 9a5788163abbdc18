#ifndef COVLAB_REPORT_HPP
#define COVLAB_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace covlab {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Structured outcome of a verification or construction. `data` carries
/// operation-specific results (witnesses, certificates, ranks) and is
/// serialized verbatim in machine output.
struct Report {
  std::string operation;
  bool passed = true;
  std::string summary;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  double seconds = 0.0;

  void add(std::string name, bool ok, std::string detail = {});
  /// Checks whose `passed` is false.
  std::vector<const Check*> failures() const;
  const Check* find(const std::string& name) const;

  /// Machine form; timing is left out unless requested so output stays
  /// deterministic.
  nlohmann::ordered_json to_json(bool with_timing = false) const;
  std::string to_text() const;
};

}  // namespace covlab

#endif  // COVLAB_REPORT_HPP
