#include <algorithm>
#include <stdexcept>

#include "bipois/verify.hpp"

namespace bipois {

std::vector<std::string> suite_names() {
  return {"ck",     "harness",        "inversion", "moments",
          "limits", "representation", "hitting",   "all"};
}

bool is_suite_name(const std::string& name) {
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;
  auto append = [&](std::vector<VerificationReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  const bool all = suite == "all";
  if (all || suite == "ck") append(check_ck(opts));
  if (all || suite == "harness") append(check_harness(opts));
  if (all || suite == "inversion") append(check_inversion(opts));
  if (all || suite == "moments") append(check_moments(opts));
  if (all || suite == "limits") append(check_limits(opts));
  if (all || suite == "representation") append(check_representation(opts));
  if (all || suite == "hitting") append(check_hitting(opts));
  if (reports.empty() && !is_suite_name(suite)) {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a,
                      const VerificationReport& b) {
                     return a.claim_id < b.claim_id;
                   });
  return reports;
}

}  // namespace bipois
