#include "bipois/bridge.hpp"

#include <cmath>
#include <stdexcept>

#include "bipois/numeric.hpp"

namespace bipois {

namespace {

BridgeCase classify(const BridgeQuery& q) {
  if (!(q.s >= 0.0 && q.s < q.t && q.t < q.u)) {
    throw std::invalid_argument("bridge: requires 0 <= s < t < u");
  }
  if (q.s == 1.0 || q.t == 1.0 || q.u == 1.0) {
    throw std::domain_error(
        "bridge: configurations with a time equal to 1 are outside the four "
        "supported cases (they arise only as limits)");
  }
  if (q.u < 1.0) return BridgeCase::k1;
  if (q.t < 1.0) return BridgeCase::k2;
  if (q.s < 1.0) return BridgeCase::k3;
  return BridgeCase::k4;
}

void check_states(const BridgeQuery& q, BridgeCase kase) {
  q.z_s.require_phase(q.s, "bridge left state");
  q.z_u.require_phase(q.u, "bridge right state");
  if (q.s == 0.0 && q.z_s.level() != 0) {
    throw std::invalid_argument("bridge: Z_0 = 0, so z_s must be 0 at s = 0");
  }
  if (kase == BridgeCase::k1 && q.z_u.level() < q.z_s.level()) {
    throw std::invalid_argument(
        "bridge: z_u >= z_s required when u < 1 (levels cannot decrease)");
  }
  if (kase == BridgeCase::k4 && q.z_u.level() > q.z_s.level()) {
    throw std::invalid_argument(
        "bridge: z_s >= z_u required when s > 1 (levels cannot increase)");
  }
}

}  // namespace

BridgeLaw bridge_law(const ProcessParams& params, const BridgeQuery& q) {
  const BridgeCase kase = classify(q);
  check_states(q, kase);
  const double r0 = params.r0();
  const double s = q.s, t = q.t, u = q.u;
  switch (kase) {
    case BridgeCase::k1: {
      const std::int64_t n = q.z_u.level() - q.z_s.level();
      const double p = (1.0 - u) * (t - s) / ((1.0 - t) * (u - s));
      return {TransitionLaw::binomial(n, p), q.z_s.level(),
              BridgeOrientation::kFromLeft, kase};
    }
    case BridgeCase::k2: {
      const double r =
          static_cast<double>(q.z_s.level() + q.z_u.level()) + r0;
      const double p = (1.0 - t) * (u - s) / ((1.0 - s) * (u - t));
      return {TransitionLaw::negative_binomial(r, p), q.z_s.level(),
              BridgeOrientation::kFromLeft, kase};
    }
    case BridgeCase::k3: {
      const double r =
          static_cast<double>(q.z_s.level() + q.z_u.level()) + r0;
      const double p = (t - 1.0) * (u - s) / ((t - s) * (u - 1.0));
      return {TransitionLaw::negative_binomial(r, p), q.z_u.level(),
              BridgeOrientation::kFromRight, kase};
    }
    case BridgeCase::k4: {
      const std::int64_t n = q.z_s.level() - q.z_u.level();
      const double p = (s - 1.0) * (u - t) / ((t - 1.0) * (u - s));
      return {TransitionLaw::binomial(n, p), q.z_u.level(),
              BridgeOrientation::kFromRight, kase};
    }
  }
  throw std::logic_error("bridge_law: unreachable");
}

double bridge_log_mass(const ProcessParams& params, const BridgeQuery& q,
                       std::int64_t z_t) {
  const BridgeLaw b = bridge_law(params, q);
  const std::int64_t shifted = z_t - b.offset;
  if (shifted < 0) return kNegInf;
  return b.law.log_mass(shifted);
}

ConditionalMoments conditional_moments(const ProcessParams& params,
                                       const BridgeQuery& q) {
  const BridgeLaw b = bridge_law(params, q);
  const Moments m = b.law.moments();
  const XAffine a = x_affine(params, q.t);
  const double mean_z = static_cast<double>(b.offset) + m.mean;
  return {a.slope * mean_z + a.intercept, a.slope * a.slope * m.variance};
}

}  // namespace bipois
