#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bipois/process_params.hpp"
#include "bipois/report.hpp"

namespace bipois {

/// Scale knobs for the verification suites. Defaults are the desk-scale
/// sizes the acceptance harness runs; tests shrink them. Monte Carlo claims
/// follow the pre-registered protocol: significance 0.01, 20 seeded
/// repetitions, at most one failure allowed per claim.
struct SuiteOptions {
  std::vector<double> thetas{0.5, 1.0, 2.0};
  std::uint64_t seed = 0x5EEDB1905ULL;
  int ck_triples_per_case = 100;
  int bridge_queries_per_case = 200;
  int inversion_pairs = 100;
  int density_tuples = 100;
  std::int64_t moment_paths = 1'000'000;
  std::int64_t two_simulator_paths = 100'000;
  std::int64_t hitting_paths = 100'000;
  std::int64_t histogram_paths = 1'000'000;
  std::int64_t representation_paths = 100'000;
  std::int64_t mc_joint_paths = 200'000;
  int mc_seeds = 20;
  int mc_allowed_failures = 1;
  double significance = 0.01;
};

/// Chapman-Kolmogorov suite over all composition families
/// (birth.birth, birth.gamma, gamma.entrance, death.death, birth.cross,
/// cross.death, entrance.death), randomized triples per family and theta.
std::vector<VerificationReport> check_ck(const SuiteOptions& opts);

/// Bridge-vs-Bayes equivalence plus the harness (linear conditional mean)
/// and quadratic-harness (conditional variance) identities on the same
/// randomized query sets, all four bridge cases.
std::vector<VerificationReport> check_harness(const SuiteOptions& opts);

/// Time inversion: marginal identity under t <-> 1/t, the Bayes-reversed
/// kernel identity, the reciprocal jump-density identity and the Monte
/// Carlo match between (1/Delta) and (Gamma) joint laws.
std::vector<VerificationReport> check_inversion(const SuiteOptions& opts);

/// Monte Carlo moments at theta = 1: E X_t = 0, E X_t^2 = t, covariance
/// min(s,t), and the fourth moment of X_1.
std::vector<VerificationReport> check_moments(const SuiteOptions& opts);

/// Two-simulator equivalence, conditional Poissonity by dispersion index,
/// cross-phase independence, unconditional overdispersion, equal-window
/// means, and the upward-jump density (normalization and histogram).
std::vector<VerificationReport> check_representation(const SuiteOptions& opts);

/// Hitting time of the lower boundary: survival law, almost-sure
/// finiteness, and the divergence witness for the expectation.
std::vector<VerificationReport> check_hitting(const SuiteOptions& opts);

/// Scaling limits: joint MGF convergence to the Poisson-process and
/// Brownian limits with monotone gap shrinkage, plus single-time
/// consistency of the joint MGF against the marginals.
std::vector<VerificationReport> check_limits(const SuiteOptions& opts);

/// Suites runnable from the CLI: ck, harness, inversion, moments, limits,
/// representation, hitting, all.
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);

/// Runs one suite (or all) and returns reports sorted by claim id.
std::vector<VerificationReport> run_suite(const std::string& suite,
                                          const SuiteOptions& opts);

}  // namespace bipois
