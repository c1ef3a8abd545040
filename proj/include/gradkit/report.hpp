#ifndef GRADKIT_REPORT_HPP
#define GRADKIT_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace gradkit {

/// One verified identity: what was checked, the worst residual seen, and the
/// tolerance it was held to. Identities that fit a scalar store it in `fitted`.
struct CheckResult {
  std::string identity;
  std::string params;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool asserted = true; // informational rows are reported but never gate
  double fitted = 0.0;
  bool has_fitted = false;

  bool pass() const { return !asserted || max_residual <= tolerance; }
};

/// A named bundle of checks; passes iff every asserted member does.
struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> cases;

  bool pass() const;
  double worst_residual() const;
  CheckResult& add(std::string identity, std::string params, double residual, double tolerance);
  /// Reported alongside the asserted rows but excluded from pass().
  CheckResult& note(std::string identity, std::string params, double value);
  void merge(const SuiteResult& other);
};

nlohmann::json check_to_json(const CheckResult& c);
nlohmann::json suite_to_json(const SuiteResult& s);

} // namespace gradkit

#endif
