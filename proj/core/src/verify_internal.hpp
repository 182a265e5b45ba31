#pragma once

#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "bipois/kernel.hpp"
#include "bipois/process_params.hpp"
#include "bipois/report.hpp"
#include "bipois/rng.hpp"
#include "bipois/verify.hpp"

namespace bipois::detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Stable per-claim master seed: suite seed mixed with the claim id.
inline std::uint64_t claim_seed(const SuiteOptions& opts,
                                const std::string& claim_id) {
  return opts.seed ^ fnv1a(claim_id);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::string theta_tag(double theta) {
  std::string s = "theta=" + format_number(theta);
  return s;
}

/// Runs fn(state, path_index) over [0, n_paths) in parallel chunks; every
/// path owns Rng(seed, path_index) inside fn, so the result is independent
/// of the thread count. Partial states merge in chunk order.
template <typename State, typename Fn>
std::vector<State> parallel_paths(std::int64_t n_paths, Fn&& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > 8) workers = 8;
  const std::int64_t chunk =
      (n_paths + static_cast<std::int64_t>(workers) - 1) /
      static_cast<std::int64_t>(workers);
  std::vector<std::future<State>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
    const std::int64_t end = std::min(n_paths, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [begin, end, &fn] {
      State state{};
      for (std::int64_t i = begin; i < end; ++i) fn(state, i);
      return state;
    }));
  }
  std::vector<State> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

/// Pre-registered Monte Carlo protocol: a p-value per seeded repetition,
/// pass when at least mc_seeds - mc_allowed_failures land above the
/// significance level. Returns the p-values; fills pass/diagnostics.
template <typename PValueFn>
void run_mc_protocol(const SuiteOptions& opts, VerificationReport& report,
                     PValueFn&& p_value_of_rep) {
  const std::uint64_t master = claim_seed(opts, report.claim_id);
  int passes = 0;
  double min_p = 1.0;
  for (int rep = 0; rep < opts.mc_seeds; ++rep) {
    const double p = p_value_of_rep(mix(master, rep));
    if (p > opts.significance) ++passes;
    if (p < min_p) min_p = p;
  }
  report.method = "monte-carlo";
  report.seed = master;
  report.computed = {static_cast<double>(passes)};
  report.reference = {static_cast<double>(opts.mc_seeds)};
  report.tolerance = static_cast<double>(opts.mc_allowed_failures);
  report.pass = passes >= opts.mc_seeds - opts.mc_allowed_failures;
  report.add_diagnostic("seeds", opts.mc_seeds);
  report.add_diagnostic("significance", opts.significance);
  report.add_diagnostic("min_p_value", min_p);
}

/// Uniform draw on (lo, hi).
inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

/// State at time t sampled from the marginal (phase-typed).
inline ZState sample_marginal_state(const ProcessParams& params, double t,
                                    Rng& rng) {
  const TransitionLaw law = marginal(params, t);
  if (law.is_discrete()) return ZState::level(law.sample_int(rng));
  return ZState::continuous(law.sample(rng));
}

/// State at time t sampled from the forward kernel out of (s, z_s).
inline ZState sample_kernel_state(const ProcessParams& params, double s,
                                  double t, ZState z_s, Rng& rng) {
  const KernelLaw k = forward_kernel(params, {s, t, z_s});
  if (k.law.is_discrete()) {
    return ZState::level(k.offset + k.law.sample_int(rng));
  }
  return ZState::continuous(k.law.sample(rng));
}

}  // namespace bipois::detail
