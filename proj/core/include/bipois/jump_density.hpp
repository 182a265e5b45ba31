#pragma once

#include <span>
#include <vector>

#include "bipois/process_params.hpp"
#include "bipois/rng.hpp"

namespace bipois {

/// log joint density of the first k+1 upward jump times
/// (Gamma_0, ..., Gamma_k) at strictly increasing points s_0 < ... < s_k
/// inside (0, 1):
///   log G(r0+k+1) - log G(r0) + (r0+k-1) log(1-s_k) - 2 sum_{j<k} log(1-s_j)
double gamma_jump_log_density(const ProcessParams& params,
                              std::span<const double> s_increasing);

/// log joint density of the downward entrance times (Delta_0, ..., Delta_k)
/// with arguments passed in increasing time order (Delta_k < ... < Delta_0,
/// all > 1). Equals the Gamma density at reciprocal arguments minus
/// 2 sum log t_i (the time-inversion identity).
double delta_jump_log_density(const ProcessParams& params,
                              std::span<const double> t_increasing);

/// P(Delta_0 > t) = 1 - (1 - 1/t)^{1/theta^2} for t > 1 (1 for t <= 1).
double delta0_survival(const ProcessParams& params, double t);

enum class DegenerateKind { kBrownian, kPoisson, kPoissonInverted };

/// Exact finite-dimensional samples of the degenerate parameter cases, used
/// as ground truth in limit experiments:
///   kBrownian          X_t = B_t                    (both parameters 0)
///   kPoisson           X_t = c N_{t/c^2} - t/c      (one parameter c != 0)
///   kPoissonInverted   X_t = c t N_{1/(t c^2)} - 1/c
/// times must be positive and strictly increasing.
std::vector<double> degenerate_reference(DegenerateKind kind, double c,
                                         std::span<const double> times,
                                         Rng& rng);

}  // namespace bipois
