#pragma once

#include <span>
#include <vector>

#include "bipois/process_params.hpp"

namespace bipois {

/// Ordered times 0 < t_1 < ... < t_n with one real argument per time.
struct JointMgfQuery {
  std::vector<double> times;
  std::vector<double> args;

  void validate() const;
};

/// Exact E exp(sum_j w_j Z_{t_j}) by backward recursion: the last time
/// point is absorbed through its conditional MGF, which is exponential in
/// the conditioning state (E[e^{w Z_t} | Z_s = z] = C * D^z), leaving a
/// multiplier and an updated argument at t_{n-1}; the recursion bottoms out
/// at the single-time marginal MGF. Throws a divergence error naming the
/// step whose argument leaves its convergence region.
double joint_mgf_z(const ProcessParams& params, const JointMgfQuery& query);
double log_joint_mgf_z(const ProcessParams& params,
                       const JointMgfQuery& query);

/// Exact E exp(sum_j u_j X_{t_j}) through the affine X = slope*Z +
/// intercept at each time.
double joint_mgf_x(const ProcessParams& params, const JointMgfQuery& query);
double log_joint_mgf_x(const ProcessParams& params,
                       const JointMgfQuery& query);

/// Limit of E exp(sum u_j Z^(eps)_{t_j eps^2}) as eps -> 0: the joint MGF
/// of a unit-rate Poisson process, prod_j exp((t_j - t_{j-1})(e^{S_j} - 1))
/// with S_j the tail sums of the arguments.
double poisson_process_joint_mgf(std::span<const double> times,
                                 std::span<const double> args);

/// Limit of E exp(sum u_j X^(theta)_{t_j}) as theta -> 0: the joint MGF of
/// standard Brownian motion, exp(1/2 sum_k (t_k - t_{k-1}) S_k^2).
double brownian_joint_mgf(std::span<const double> times,
                          std::span<const double> args);

}  // namespace bipois
