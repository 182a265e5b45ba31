#pragma once

#include <cstdint>

#include "bipois/process_params.hpp"
#include "bipois/transition_law.hpp"

namespace bipois {

/// Two-sided conditional laws L(Z_t | Z_s, Z_u) for s < t < u. The four
/// cases are indexed by where the endpoints sit relative to the continuous
/// instant; times equal to 1 are outside all four cases and rejected.
///
///   k1  s<t<u<1   Z_t - Z_s ~ Binomial(Z_u - Z_s, (1-u)(t-s)/((1-t)(u-s)))
///   k2  s<t<1<u   Z_t - Z_s ~ NB(Z_s+Z_u+r0,    (1-t)(u-s)/((1-s)(u-t)))
///   k3  s<1<t<u   Z_t - Z_u ~ NB(Z_s+Z_u+r0,    (t-1)(u-s)/((t-s)(u-1)))
///   k4  1<s<t<u   Z_t - Z_u ~ Binomial(Z_s - Z_u, (s-1)(u-t)/((t-1)(u-s)))
enum class BridgeCase { k1 = 1, k2 = 2, k3 = 3, k4 = 4 };

/// Cases 1 and 2 describe Z_t - Z_s (anchored at the left state), cases 3
/// and 4 describe Z_t - Z_u. The flag keeps the orientation explicit rather
/// than silently reparameterizing.
enum class BridgeOrientation { kFromLeft, kFromRight };

struct BridgeQuery {
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
  ZState z_s = ZState::level(0);
  ZState z_u = ZState::level(0);
};

struct BridgeLaw {
  TransitionLaw law;
  std::int64_t offset = 0;  // Z_t = offset + draw
  BridgeOrientation orientation = BridgeOrientation::kFromLeft;
  BridgeCase kase = BridgeCase::k1;
};

BridgeLaw bridge_law(const ProcessParams& params, const BridgeQuery& q);

/// log P(Z_t = z_t | Z_s, Z_u); -inf off support.
double bridge_log_mass(const ProcessParams& params, const BridgeQuery& q,
                       std::int64_t z_t);

/// Closed-form conditional mean and variance of X_t given (Z_s, Z_u),
/// obtained from the case law's moments through the Z -> X map.
struct ConditionalMoments {
  double mean_x = 0.0;
  double var_x = 0.0;
};
ConditionalMoments conditional_moments(const ProcessParams& params,
                                       const BridgeQuery& q);

}  // namespace bipois
