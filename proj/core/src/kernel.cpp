#include "bipois/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "bipois/numeric.hpp"
#include "bipois/quadrature.hpp"

namespace bipois {

namespace {

void check_times(double s, double t) {
  if (s < 0.0 || !std::isfinite(s) || !std::isfinite(t)) {
    throw std::invalid_argument("kernel: times must be finite and s >= 0");
  }
  if (!(s < t)) {
    throw std::invalid_argument("kernel: requires s < t");
  }
}

KernelCase classify(double s, double t) {
  check_times(s, t);
  if (t < 1.0) return KernelCase::kBirth;
  if (t == 1.0) return KernelCase::kBirthToOne;
  if (s < 1.0) return KernelCase::kCross;
  if (s == 1.0) return KernelCase::kEntrance;
  return KernelCase::kDeath;
}

// The s = 0 state is deterministic; a positive level there is meaningless.
void check_source(double s, const ZState& z_s) {
  z_s.require_phase(s, "kernel source state");
  if (s == 0.0 && z_s.level() != 0) {
    throw std::invalid_argument("kernel: Z_0 = 0, so z_s must be 0 at s = 0");
  }
}

}  // namespace

const char* kernel_case_name(KernelCase c) noexcept {
  switch (c) {
    case KernelCase::kBirth: return "birth";
    case KernelCase::kBirthToOne: return "birth-to-gamma";
    case KernelCase::kCross: return "cross";
    case KernelCase::kEntrance: return "entrance";
    case KernelCase::kDeath: return "death";
  }
  return "?";
}

TransitionLaw marginal(const ProcessParams& params, double t) {
  if (t < 0.0) throw std::invalid_argument("marginal: t must be >= 0");
  if (t == 0.0) return TransitionLaw::binomial(0, 0.0);  // point mass at 0
  if (t < 1.0) return TransitionLaw::negative_binomial(params.r0(), 1.0 - t);
  if (t == 1.0) return TransitionLaw::gamma(params.r0(), 1.0);
  return TransitionLaw::negative_binomial(params.r0(), 1.0 - 1.0 / t);
}

double marginal_log_mass(const ProcessParams& params, double t, ZState z) {
  z.require_phase(t, "marginal state");
  const TransitionLaw law = marginal(params, t);
  if (law.is_discrete()) return law.log_mass(z.level());
  return law.log_density(z.value());
}

KernelLaw forward_kernel(const ProcessParams& params, const KernelQuery& q) {
  const KernelCase kase = classify(q.s, q.t);
  check_source(q.s, q.z_s);
  const double r0 = params.r0();
  switch (kase) {
    case KernelCase::kBirth: {
      const double z = static_cast<double>(q.z_s.level());
      const double p = (1.0 - q.t) / (1.0 - q.s);
      return {TransitionLaw::negative_binomial(z + r0, p), q.z_s.level(),
              kase};
    }
    case KernelCase::kBirthToOne: {
      const double z = static_cast<double>(q.z_s.level());
      return {TransitionLaw::gamma(z + r0, 1.0 - q.s), 0, kase};
    }
    case KernelCase::kCross: {
      const double z = static_cast<double>(q.z_s.level());
      const double p = (q.t - 1.0) / (q.t - q.s);
      return {TransitionLaw::negative_binomial(z + r0, p), 0, kase};
    }
    case KernelCase::kEntrance: {
      const double z1 = q.z_s.value();
      if (z1 == 0.0) {
        // absorbed at level 0 forever once Z_1 = 0
        return {TransitionLaw::binomial(0, 0.0), 0, kase};
      }
      return {TransitionLaw::poisson(z1 / (q.t - 1.0)), 0, kase};
    }
    case KernelCase::kDeath: {
      const double p = (q.s - 1.0) / (q.t - 1.0);
      return {TransitionLaw::binomial(q.z_s.level(), p), 0, kase};
    }
  }
  throw std::logic_error("forward_kernel: unreachable");
}

double kernel_log_mass(const ProcessParams& params, double s, double t,
                       ZState z_s, ZState z_t) {
  const KernelLaw k = forward_kernel(params, {s, t, z_s});
  z_t.require_phase(t, "kernel target state");
  if (!k.law.is_discrete()) {
    return k.law.log_density(z_t.value());
  }
  const std::int64_t shifted = z_t.level() - k.offset;
  if (shifted < 0) return kNegInf;  // birth never decreases
  return k.law.log_mass(shifted);
}

double kernel_mean(const ProcessParams& params, double s, double t,
                   double z_s) {
  const KernelCase kase = classify(s, t);
  const double r0 = params.r0();
  switch (kase) {
    case KernelCase::kBirth:
      return (z_s * (1.0 - s) + r0 * (t - s)) / (1.0 - t);
    case KernelCase::kBirthToOne:
      return (z_s + r0) * (1.0 - s);
    case KernelCase::kCross:
      return (z_s + r0) * (1.0 - s) / (t - 1.0);
    case KernelCase::kEntrance:
      return z_s / (t - 1.0);
    case KernelCase::kDeath:
      return z_s * (s - 1.0) / (t - 1.0);
  }
  throw std::logic_error("kernel_mean: unreachable");
}

MgfLogParts conditional_mgf_log_parts(const ProcessParams& params, double s,
                                      double t, double u) {
  const KernelCase kase = classify(s, t);
  const double r0 = params.r0();
  auto nb_log_base = [](double p, double u_arg) {
    // log( p / (1 - (1-p) e^u) ), with 1-(1-p)e^u = p - (1-p)expm1(u)
    const double q = 1.0 - p;
    if (q * std::exp(u_arg) >= 1.0) {
      throw std::domain_error(
          "conditional_mgf diverges: requires u < -log(1-p) = " +
          format_number(-std::log1p(-p)));
    }
    return -std::log1p(-q * std::expm1(u_arg) / p);
  };
  switch (kase) {
    case KernelCase::kBirth: {
      const double p = (1.0 - t) / (1.0 - s);
      const double g = nb_log_base(p, u);
      return {r0 * g, u + g, kase};
    }
    case KernelCase::kBirthToOne: {
      const double scale = 1.0 - s;
      if (u * scale >= 1.0) {
        throw std::domain_error(
            "conditional_mgf diverges: gamma case requires u < 1/(1-s) = " +
            format_number(1.0 / scale));
      }
      const double g = -std::log1p(-u * scale);
      return {r0 * g, g, kase};
    }
    case KernelCase::kCross: {
      const double p = (t - 1.0) / (t - s);
      const double g = nb_log_base(p, u);
      return {r0 * g, g, kase};
    }
    case KernelCase::kEntrance:
      return {0.0, std::expm1(u) / (t - 1.0), kase};
    case KernelCase::kDeath: {
      const double p = (s - 1.0) / (t - 1.0);
      return {0.0, std::log1p(p * std::expm1(u)), kase};
    }
  }
  throw std::logic_error("conditional_mgf_log_parts: unreachable");
}

double conditional_mgf(const ProcessParams& params, double s, double t,
                       ZState z_s, double u) {
  check_source(s, z_s);
  const MgfLogParts parts = conditional_mgf_log_parts(params, s, t, u);
  return std::exp(parts.log_c + z_s.value() * parts.log_d);
}

namespace {

std::string segment_label(double a, double b) {
  if (b < 1.0) return "birth";
  if (b == 1.0) return "gamma";
  if (a < 1.0) return "cross";
  if (a == 1.0) return "entrance";
  return "death";
}

}  // namespace

VerificationReport verify_ck(const ProcessParams& params, double s, double m,
                             double t, ZState z_s, ZState z_t) {
  check_times(s, m);
  check_times(m, t);
  const double eps = params.tol().eps_check;
  VerificationReport report;
  report.claim_id = "ck/" + segment_label(s, m) + "." + segment_label(m, t);
  report.tolerance = eps;

  const double direct = std::exp(kernel_log_mass(params, s, t, z_s, z_t));

  double composed = 0.0;
  if (m == 1.0) {
    // integrate over the continuous gamma column
    report.method = "quadrature";
    auto integrand = [&](double x) {
      const ZState mid = ZState::continuous(x);
      const double lw = kernel_log_mass(params, s, m, z_s, mid) +
                        kernel_log_mass(params, m, t, mid, z_t);
      return std::isfinite(lw) ? std::exp(lw) : 0.0;
    };
    // integrand is an unnormalized gamma with these shape/rate
    const double shape = z_s.value() + params.r0() +
                         (z_t.is_level() ? static_cast<double>(z_t.level())
                                         : z_t.value());
    const double rate = 1.0 / (1.0 - s) + 1.0 / (t - 1.0);
    const double upper = (shape + 50.0 + 12.0 * std::sqrt(shape + 1.0)) / rate;
    const QuadratureResult quad = tanh_sinh(integrand, 0.0, upper, eps / 10.0);
    composed = quad.value;
    report.add_diagnostic("quadrature_level", quad.refinement_level);
    report.add_diagnostic("quadrature_upper", upper);
  } else {
    report.method = "exact-sum";
    auto log_term = [&](std::int64_t j) {
      const ZState mid = ZState::level(j);
      return kernel_log_mass(params, s, m, z_s, mid) +
             kernel_log_mass(params, m, t, mid, z_t);
    };
    // middle-state support bounds per phase of m and t
    std::int64_t lo = 0;
    std::int64_t hi = -1;  // -1: unbounded
    if (m < 1.0) {
      lo = z_s.is_level() ? z_s.level() : 0;
      if (t < 1.0) hi = z_t.level();
    } else {
      lo = z_t.is_level() ? z_t.level() : 0;
      if (s > 1.0) hi = z_s.level();
    }
    if (hi >= 0) {
      CompensatedSum acc;
      for (std::int64_t j = lo; j <= hi; ++j) {
        const double lt = log_term(j);
        if (std::isfinite(lt)) acc.add(std::exp(lt));
      }
      composed = acc.value();
      report.add_diagnostic("truncation_k", static_cast<double>(hi));
    } else {
      const AdaptiveSumResult sum =
          adaptive_sum(log_term, lo, params.tol().eps_tail);
      composed = sum.value;
      report.add_diagnostic("truncation_k", static_cast<double>(sum.k_stop));
    }
  }

  report.computed = {composed};
  report.reference = {direct};
  report.pass = std::abs(composed - direct) <= eps;
  report.add_diagnostic("s", s);
  report.add_diagnostic("m", m);
  report.add_diagnostic("t", t);
  report.add_diagnostic("z_s", z_s.value());
  report.add_diagnostic("z_t", z_t.value());
  report.add_diagnostic("theta", params.theta());
  return report;
}

double reversed_kernel_log_mass(const ProcessParams& params, double a,
                                double b, ZState z_a, ZState z_b) {
  check_times(a, b);
  if (a == 0.0) {
    throw std::invalid_argument("reversed_kernel_log_mass: requires a > 0");
  }
  return marginal_log_mass(params, 1.0 / b, z_b) +
         kernel_log_mass(params, 1.0 / b, 1.0 / a, z_b, z_a) -
         marginal_log_mass(params, 1.0 / a, z_a);
}

}  // namespace bipois
