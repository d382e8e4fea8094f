#ifndef QGESS_CATALOG_HPP
#define QGESS_CATALOG_HPP

// Fixed reproduction catalog: bundled scenario configs plus stored expected
// verdicts and values, checked assertion by assertion.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgess {

enum class LineKind { kPass, kFail, kInfo };

struct CheckLine {
  LineKind kind = LineKind::kInfo;
  std::string text;
};

/// Collects assertion outcomes for one case.
class CaseLog {
 public:
  void check(bool ok, const std::string& text);
  /// |got - want| <= tol.
  void near(const std::string& what, double got, double want, double tol);
  void equal(const std::string& what, const std::string& got, const std::string& want);
  /// Informational line; never affects the outcome.
  void info(const std::string& text);

  const std::vector<CheckLine>& lines() const { return lines_; }
  bool passed() const;

 private:
  std::vector<CheckLine> lines_;
};

struct NamedConfig {
  std::string name;
  nlohmann::json config;
};

struct CatalogCase {
  std::string id;
  std::string title;
  std::vector<NamedConfig> configs;
  /// Receives the reports of `configs`, in order.
  std::function<void(const std::vector<nlohmann::json>&, CaseLog&)> check;
};

const std::vector<CatalogCase>& catalog();

/// nullptr for an unknown id.
const CatalogCase* find_case(const std::string& id);

struct CaseResult {
  std::string id;
  std::vector<CheckLine> lines;
  bool passed = false;
  double seconds = 0.0;
};

/// Runs every bundled config, then the case's assertions. Exceptions thrown
/// along the way are recorded as failures.
CaseResult reproduce_case(const CatalogCase& c);

/// "PASS  <id>  <text>" and similar.
std::string format_line(const std::string& id, const CheckLine& line);

}  // namespace qgess

#endif  // QGESS_CATALOG_HPP
