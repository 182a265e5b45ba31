#pragma once

#include <cstdint>
#include <string>

#include "bipois/process_params.hpp"
#include "bipois/report.hpp"
#include "bipois/transition_law.hpp"

namespace bipois {

/// The five time-ordering cases of the forward transition kernel of (Z_t).
/// Birth rates (n + 1/theta^2)/(1-t) drive the pure-birth phase on [0,1),
/// death rates n/(t-1) the pure-death phase on (1,inf); the instant t = 1
/// carries the continuous gamma column and the Poisson entrance law.
///
///   kBirth      0 <= s < t < 1   Z_t - Z_s | Z_s ~ NB(Z_s + r0, (1-t)/(1-s))
///   kBirthToOne s < 1 = t        Z_1 | Z_s ~ Gamma(Z_s + r0, 1 - s)
///   kCross      s < 1 < t        Z_t | Z_s ~ NB(Z_s + r0, (t-1)/(t-s))
///   kEntrance   s = 1 < t        Z_t | Z_1 ~ Poisson(Z_1 / (t-1))
///   kDeath      1 < s < t        Z_t | Z_s ~ Binomial(Z_s, (s-1)/(t-1))
enum class KernelCase { kBirth, kBirthToOne, kCross, kEntrance, kDeath };

const char* kernel_case_name(KernelCase c) noexcept;

struct KernelQuery {
  double s = 0.0;
  double t = 0.0;
  ZState z_s = ZState::level(0);
};

struct KernelLaw {
  TransitionLaw law;
  std::int64_t offset = 0;  // Z_t = offset + (draw from law); z_s in the birth case
  KernelCase kase = KernelCase::kBirth;
};

/// Unconditional law of Z_t. Z_0 = 0 is returned as the point mass
/// Binomial(0, 0).
TransitionLaw marginal(const ProcessParams& params, double t);

/// Log pmf of the marginal, dispatching to the density at t = 1.
double marginal_log_mass(const ProcessParams& params, double t, ZState z);

/// Conditional law of Z_t given Z_s = z_s for s < t, as (law, offset, case).
KernelLaw forward_kernel(const ProcessParams& params, const KernelQuery& q);

/// log P(Z_t = z_t | Z_s = z_s) (a log density when t = 1). -inf off
/// support; phase-mismatched state types are domain errors.
double kernel_log_mass(const ProcessParams& params, double s, double t,
                       ZState z_s, ZState z_t);

/// E[Z_t | Z_s = z_s]; z_s is the level (or the real state at s = 1).
double kernel_mean(const ProcessParams& params, double s, double t,
                   double z_s);

/// E[e^{u Z_t} | Z_s = z] = exp(log_c + z * log_d): the kernels are all
/// exponential-family in the conditioning state, which is what the joint
/// MGF backward recursion consumes.
struct MgfLogParts {
  double log_c = 0.0;
  double log_d = 0.0;
  KernelCase kase = KernelCase::kBirth;
};
MgfLogParts conditional_mgf_log_parts(const ProcessParams& params, double s,
                                      double t, double u);

/// E[e^{u Z_t} | Z_s = z_s]. Throws a divergence error naming the bound
/// when u leaves the case's convergence region.
double conditional_mgf(const ProcessParams& params, double s, double t,
                       ZState z_s, double u);

/// Chapman-Kolmogorov check: composes the kernel s -> m -> t by adaptive
/// truncated summation (or adaptive quadrature when m = 1) and compares
/// against the direct kernel s -> t at the configured eps_check.
VerificationReport verify_ck(const ProcessParams& params, double s, double m,
                             double t, ZState z_s, ZState z_t);

/// log of the Bayes-reversed kernel of the time-inverted process:
/// marginal(1/b)(z_b) * K(1/b -> 1/a)(z_b, z_a) / marginal(1/a)(z_a).
/// Time inversion says this equals kernel_log_mass(a, b, z_a, z_b).
double reversed_kernel_log_mass(const ProcessParams& params, double a,
                                double b, ZState z_a, ZState z_b);

}  // namespace bipois
