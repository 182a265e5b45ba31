#include "bipois/jump_density.hpp"

#include <cmath>
#include <stdexcept>

#include "bipois/numeric.hpp"
#include "bipois/transition_law.hpp"

namespace bipois {

namespace {

void check_increasing(std::span<const double> v, double lo, double hi,
                      const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double prev = lo;
  for (double x : v) {
    if (!(x > prev) || !(x < hi)) {
      throw std::invalid_argument(
          std::string(what) + ": times must be strictly increasing and in range");
    }
    prev = x;
  }
}

}  // namespace

double gamma_jump_log_density(const ProcessParams& params,
                              std::span<const double> s) {
  check_increasing(s, 0.0, 1.0, "gamma_jump_log_density");
  const double r0 = params.r0();
  const std::size_t k = s.size() - 1;
  double log_density = std::lgamma(r0 + static_cast<double>(k) + 1.0) -
                       std::lgamma(r0) +
                       (r0 + static_cast<double>(k) - 1.0) *
                           std::log1p(-s[k]);
  for (std::size_t j = 0; j < k; ++j) {
    log_density -= 2.0 * std::log1p(-s[j]);
  }
  return log_density;
}

double delta_jump_log_density(const ProcessParams& params,
                              std::span<const double> t) {
  check_increasing(t, 1.0, kPosInf, "delta_jump_log_density");
  // t[0] = Delta_k (deepest level, earliest entrance), t.back() = Delta_0.
  const double r0 = params.r0();
  const std::size_t k = t.size() - 1;
  double log_density = std::lgamma(r0 + static_cast<double>(k) + 1.0) -
                       std::lgamma(r0) +
                       (r0 + static_cast<double>(k) - 1.0) *
                           std::log(t[0] - 1.0) -
                       (r0 + static_cast<double>(k) + 1.0) * std::log(t[0]);
  for (std::size_t i = 1; i <= k; ++i) {
    log_density -= 2.0 * std::log(t[i] - 1.0);
  }
  return log_density;
}

double delta0_survival(const ProcessParams& params, double t) {
  if (t <= 1.0) return 1.0;
  return -std::expm1(params.r0() * std::log1p(-1.0 / t));
}

std::vector<double> degenerate_reference(DegenerateKind kind, double c,
                                         std::span<const double> times,
                                         Rng& rng) {
  check_increasing(times, 0.0, kPosInf, "degenerate_reference");
  const std::size_t n = times.size();
  std::vector<double> x(n);
  switch (kind) {
    case DegenerateKind::kBrownian: {
      double prev_t = 0.0;
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        value += std::sqrt(times[i] - prev_t) * rng.normal();
        prev_t = times[i];
        x[i] = value;
      }
      return x;
    }
    case DegenerateKind::kPoisson: {
      if (c == 0.0) {
        throw std::invalid_argument("degenerate_reference: c must be nonzero");
      }
      const double c2 = c * c;
      double prev_arg = 0.0;
      std::int64_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double arg = times[i] / c2;
        count += sample_poisson(arg - prev_arg, rng);
        prev_arg = arg;
        x[i] = c * static_cast<double>(count) - times[i] / c;
      }
      return x;
    }
    case DegenerateKind::kPoissonInverted: {
      if (c == 0.0) {
        throw std::invalid_argument("degenerate_reference: c must be nonzero");
      }
      // N is evaluated at 1/(t c^2), decreasing in t: sample increments on
      // the reversed grid, then map back.
      const double c2 = c * c;
      std::vector<std::int64_t> counts(n);
      double prev_arg = 0.0;
      std::int64_t count = 0;
      for (std::size_t i = n; i-- > 0;) {
        const double arg = 1.0 / (times[i] * c2);
        count += sample_poisson(arg - prev_arg, rng);
        prev_arg = arg;
        counts[i] = count;
      }
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = c * times[i] * static_cast<double>(counts[i]) - 1.0 / c;
      }
      return x;
    }
  }
  throw std::logic_error("degenerate_reference: unreachable");
}

}  // namespace bipois
