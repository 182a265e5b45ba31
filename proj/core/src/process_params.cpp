#include "bipois/process_params.hpp"

#include <cmath>

namespace bipois {

ParamReduction reduce_params(double eta, double theta, Tolerances tol) {
  const double product = eta * theta;
  if (product < 0.0) {
    throw std::invalid_argument(
        "reduce_params: a bi-Poisson process satisfies eta*theta >= 0; "
        "eta*theta < 0 is not realizable");
  }
  if (product == 0.0) {
    throw std::invalid_argument(
        "reduce_params: eta*theta = 0 is a degenerate process; use "
        "degenerate_reference (Brownian or scaled-Poisson forms) instead");
  }
  const bool negate = (eta < 0.0);
  const double e = std::abs(eta);
  const double h = std::abs(theta);
  ParamReduction out{ProcessParams(std::sqrt(e * h), tol),
                     /*time_scale=*/h / e,
                     /*space_scale=*/std::sqrt(e / h),
                     /*negate=*/negate};
  return out;
}

XAffine x_affine(const ProcessParams& params, double t) {
  const double theta = params.theta();
  switch (phase_of(t)) {
    case Phase::kBirth:
      return {theta * (1.0 - t), -t / theta};
    case Phase::kOne:
      return {theta, -1.0 / theta};
    case Phase::kDeath:
      return {theta * (t - 1.0), -1.0 / theta};
  }
  return {};
}

double z_to_x(const ProcessParams& params, double t, double z) {
  const XAffine m = x_affine(params, t);
  return m.slope * z + m.intercept;
}

ZState x_to_z(const ProcessParams& params, double t, double x,
              double snap_tol) {
  const XAffine m = x_affine(params, t);
  if (phase_of(t) == Phase::kOne) {
    const double z = (x - m.intercept) / m.slope;
    if (z < -snap_tol) {
      throw std::domain_error("x_to_z: x below the support at t = 1");
    }
    return ZState::continuous(std::max(z, 0.0));
  }
  const double z = (x - m.intercept) / m.slope;
  const double snapped = std::round(z);
  if (std::abs(z - snapped) > snap_tol || snapped < 0.0) {
    throw std::domain_error(
        "x_to_z: x is not on the level lattice at this time");
  }
  return ZState::level(static_cast<std::int64_t>(snapped));
}

}  // namespace bipois
