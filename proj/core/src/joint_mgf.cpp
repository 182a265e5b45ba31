#include "bipois/joint_mgf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bipois/kernel.hpp"
#include "bipois/transition_law.hpp"

namespace bipois {

void JointMgfQuery::validate() const {
  if (times.empty() || times.size() != args.size()) {
    throw std::invalid_argument(
        "JointMgfQuery: need equally many times and arguments");
  }
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          "JointMgfQuery: times must be strictly increasing and positive");
    }
    prev = t;
  }
}

double log_joint_mgf_z(const ProcessParams& params,
                       const JointMgfQuery& query) {
  query.validate();
  std::vector<double> w = query.args;
  double log_a = 0.0;
  for (std::size_t k = query.times.size(); k-- > 1;) {
    try {
      const MgfLogParts parts = conditional_mgf_log_parts(
          params, query.times[k - 1], query.times[k], w[k]);
      log_a += parts.log_c;
      w[k - 1] += parts.log_d;
    } catch (const std::domain_error& e) {
      throw std::domain_error("joint_mgf: divergence absorbing step " +
                              std::to_string(k + 1) + " (t = " +
                              format_number(query.times[k]) + "): " +
                              e.what());
    }
  }
  try {
    return log_a + marginal(params, query.times[0]).mgf_log(w[0]);
  } catch (const std::domain_error& e) {
    throw std::domain_error(
        "joint_mgf: divergence at the base marginal (t = " +
        format_number(query.times[0]) + "): " + e.what());
  }
}

double joint_mgf_z(const ProcessParams& params, const JointMgfQuery& query) {
  return std::exp(log_joint_mgf_z(params, query));
}

double log_joint_mgf_x(const ProcessParams& params,
                       const JointMgfQuery& query) {
  query.validate();
  JointMgfQuery z_query{query.times, query.args};
  double shift = 0.0;
  for (std::size_t j = 0; j < query.times.size(); ++j) {
    const XAffine m = x_affine(params, query.times[j]);
    shift += query.args[j] * m.intercept;
    z_query.args[j] = query.args[j] * m.slope;
  }
  return shift + log_joint_mgf_z(params, z_query);
}

double joint_mgf_x(const ProcessParams& params, const JointMgfQuery& query) {
  return std::exp(log_joint_mgf_x(params, query));
}

namespace {

std::vector<double> tail_sums(std::span<const double> args) {
  std::vector<double> s(args.size());
  double acc = 0.0;
  for (std::size_t j = args.size(); j-- > 0;) {
    acc += args[j];
    s[j] = acc;
  }
  return s;
}

}  // namespace

double poisson_process_joint_mgf(std::span<const double> times,
                                 std::span<const double> args) {
  const std::vector<double> s = tail_sums(args);
  double log_value = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    log_value += (times[j] - prev) * std::expm1(s[j]);
    prev = times[j];
  }
  return std::exp(log_value);
}

double brownian_joint_mgf(std::span<const double> times,
                          std::span<const double> args) {
  const std::vector<double> s = tail_sums(args);
  double log_value = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    log_value += 0.5 * (times[j] - prev) * s[j] * s[j];
    prev = times[j];
  }
  return std::exp(log_value);
}

}  // namespace bipois
