#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bipois {

/// Structured pass/fail record for one verified identity. Diagnostics carry
/// whatever makes the run reproducible: truncation index, quadrature
/// refinement, sample size, statistical counts. Reports serialize to a JSON
/// array with fixed field names and 17-significant-digit numbers.
struct VerificationReport {
  std::string claim_id;
  std::string method;  // exact-sum | quadrature | monte-carlo | closed-form
  std::vector<double> computed;
  std::vector<double> reference;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> diagnostics;

  void add_diagnostic(std::string key, double value) {
    diagnostics.emplace_back(std::move(key), value);
  }

  double max_abs_error() const noexcept {
    double worst = 0.0;
    const std::size_t n = std::min(computed.size(), reference.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::abs(computed[i] - reference[i]);
      if (e > worst) worst = e;
    }
    return worst;
  }
};

std::string format_number(double v);  // %.17g

void write_reports_json(std::ostream& os,
                        std::span<const VerificationReport> reports);

}  // namespace bipois
