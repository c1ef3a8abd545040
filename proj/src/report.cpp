#include "gradkit/report.hpp"

#include <algorithm>
#include <utility>

namespace gradkit {

bool SuiteResult::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CheckResult& c) { return c.pass(); });
}

double SuiteResult::worst_residual() const {
  double worst = 0.0;
  for (const auto& c : cases)
    if (c.asserted) worst = std::max(worst, c.max_residual);
  return worst;
}

CheckResult& SuiteResult::add(std::string identity, std::string params, double residual,
                              double tolerance) {
  CheckResult c;
  c.identity = std::move(identity);
  c.params = std::move(params);
  c.max_residual = residual;
  c.tolerance = tolerance;
  cases.push_back(std::move(c));
  return cases.back();
}

CheckResult& SuiteResult::note(std::string identity, std::string params, double value) {
  CheckResult c;
  c.identity = std::move(identity);
  c.params = std::move(params);
  c.max_residual = value;
  c.asserted = false;
  cases.push_back(std::move(c));
  return cases.back();
}

void SuiteResult::merge(const SuiteResult& other) {
  cases.insert(cases.end(), other.cases.begin(), other.cases.end());
}

nlohmann::json check_to_json(const CheckResult& c) {
  nlohmann::json j{{"identity", c.identity},
                   {"params", c.params},
                   {"max_residual", c.max_residual},
                   {"tolerance", c.tolerance},
                   {"asserted", c.asserted},
                   {"pass", c.pass()}};
  if (c.has_fitted) j["fitted"] = c.fitted;
  return j;
}

nlohmann::json suite_to_json(const SuiteResult& s) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : s.cases) cases.push_back(check_to_json(c));
  return nlohmann::json{{"suite", s.suite}, {"pass", s.pass()}, {"cases", std::move(cases)}};
}

} // namespace gradkit
