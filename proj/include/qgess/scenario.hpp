#ifndef QGESS_SCENARIO_HPP
#define QGESS_SCENARIO_HPP

// Scenario configs (JSON) in, deterministic JSON reports out.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qgess {

/// Version string embedded in every report.
const char* library_version();

/// Invalid scenario config. `pointer` is a JSON pointer to the offending
/// field, or "line L, column C" for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Parses config text, reporting syntax errors with line and column.
nlohmann::json parse_config_text(const std::string& text);

struct CsvFile {
  std::string name;
  std::string content;
};

struct ScenarioOutput {
  nlohmann::json report;
  /// Trajectories and grid scans; filled only when requested.
  std::vector<CsvFile> csv;
};

/// Validates the config completely before any computation, then runs each
/// requested analysis in the listed order.
ScenarioOutput run_scenario(const nlohmann::json& config, bool with_csv = false);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string render_report(const nlohmann::json& report);

}  // namespace qgess

#endif  // QGESS_SCENARIO_HPP
