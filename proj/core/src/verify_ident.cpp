#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bipois/bridge.hpp"
#include "bipois/joint_mgf.hpp"
#include "bipois/jump_density.hpp"
#include "bipois/kernel.hpp"
#include "bipois/numeric.hpp"
#include "bipois/verify.hpp"
#include "verify_internal.hpp"

namespace bipois {

using detail::claim_seed;
using detail::sample_kernel_state;
using detail::sample_marginal_state;
using detail::theta_tag;
using detail::uniform_in;

namespace {

struct CkFamily {
  const char* name;
  // draws (s, m, t) for the composition family
  void (*draw_times)(Rng&, double&, double&, double&);
};

const CkFamily kCkFamilies[] = {
    {"birth.birth",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 0.02, 0.5);
       m = uniform_in(rng, s + 0.05, 0.7);
       t = uniform_in(rng, m + 0.02, 0.95);
     }},
    {"birth.gamma",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 0.02, 0.6);
       m = uniform_in(rng, s + 0.05, 0.9);
       t = 1.0;
     }},
    {"gamma.entrance",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 0.02, 0.9);
       m = 1.0;
       t = uniform_in(rng, 1.1, 4.0);
     }},
    {"death.death",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 1.05, 2.0);
       m = uniform_in(rng, s + 0.05, 3.0);
       t = uniform_in(rng, m + 0.05, 5.0);
     }},
    {"birth.cross",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 0.02, 0.5);
       m = uniform_in(rng, s + 0.05, 0.92);
       t = uniform_in(rng, 1.1, 4.0);
     }},
    {"cross.death",
     [](Rng& rng, double& s, double& m, double& t) {
       s = uniform_in(rng, 0.02, 0.9);
       m = uniform_in(rng, 1.1, 3.0);
       t = uniform_in(rng, m + 0.1, 5.0);
     }},
    {"entrance.death",
     [](Rng& rng, double& s, double& m, double& t) {
       s = 1.0;
       m = uniform_in(rng, 1.1, 3.0);
       t = uniform_in(rng, m + 0.1, 5.0);
     }},
};

}  // namespace

std::vector<VerificationReport> check_ck(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;
  for (double theta : opts.thetas) {
    const ProcessParams params(theta);
    for (const CkFamily& family : kCkFamilies) {
      VerificationReport agg;
      agg.claim_id =
          std::string("ck/") + family.name + "/" + theta_tag(theta);
      agg.method = "exact-sum";
      agg.tolerance = params.tol().eps_check;
      agg.seed = claim_seed(opts, agg.claim_id);
      Rng rng(agg.seed);

      double worst = 0.0;
      double worst_truncation = 0.0;
      bool all_pass = true;
      for (int i = 0; i < opts.ck_triples_per_case; ++i) {
        double s, m, t;
        family.draw_times(rng, s, m, t);
        const ZState z_s = sample_marginal_state(params, s, rng);
        const ZState z_t = sample_kernel_state(params, s, t, z_s, rng);
        const VerificationReport one = verify_ck(params, s, m, t, z_s, z_t);
        worst = std::max(worst, one.max_abs_error());
        all_pass = all_pass && one.pass;
        for (const auto& [key, value] : one.diagnostics) {
          if (key == "truncation_k" || key == "quadrature_level") {
            worst_truncation = std::max(worst_truncation, value);
          }
        }
      }
      agg.computed = {worst};
      agg.reference = {0.0};
      agg.pass = all_pass;
      agg.add_diagnostic("triples", opts.ck_triples_per_case);
      agg.add_diagnostic("max_refinement", worst_truncation);
      reports.push_back(std::move(agg));
    }
  }
  return reports;
}

namespace {

void draw_bridge_times(Rng& rng, int kase, double& s, double& t, double& u) {
  switch (kase) {
    case 1:
      s = uniform_in(rng, 0.02, 0.5);
      t = uniform_in(rng, s + 0.03, 0.75);
      u = uniform_in(rng, t + 0.03, 0.95);
      break;
    case 2:
      s = uniform_in(rng, 0.02, 0.55);
      t = uniform_in(rng, s + 0.03, 0.9);
      u = uniform_in(rng, 1.08, 4.0);
      break;
    case 3:
      s = uniform_in(rng, 0.02, 0.9);
      t = uniform_in(rng, 1.08, 2.5);
      u = uniform_in(rng, t + 0.1, 5.0);
      break;
    default:
      s = uniform_in(rng, 1.05, 2.0);
      t = uniform_in(rng, s + 0.05, 3.0);
      u = uniform_in(rng, t + 0.05, 5.0);
      break;
  }
}

/// Conditional variance of X_t given the bridge, per the quadratic-harness
/// form with q = 1 and both parameters equal to theta.
double quadratic_harness_variance(double theta, double s, double t, double u,
                                  double x_s, double x_u) {
  const double span = u - s;
  return (u - t) * (t - s) / span *
         (1.0 + theta * (u * x_s - s * x_u) / span +
          theta * (x_u - x_s) / span);
}

}  // namespace

std::vector<VerificationReport> check_harness(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;
  for (double theta : opts.thetas) {
    const ProcessParams params(theta);
    double worst_mean = 0.0;
    double worst_var = 0.0;

    for (int kase = 1; kase <= 4; ++kase) {
      VerificationReport bayes;
      bayes.claim_id = "bridge-bayes/case" + std::to_string(kase) + "/" +
                       theta_tag(theta);
      bayes.method = "exact-sum";
      bayes.tolerance = 1e-10;
      bayes.seed = claim_seed(opts, bayes.claim_id);
      Rng rng(bayes.seed);

      double worst_bayes = 0.0;
      for (int i = 0; i < opts.bridge_queries_per_case; ++i) {
        double s, t, u;
        draw_bridge_times(rng, kase, s, t, u);
        const ZState z_s = sample_marginal_state(params, s, rng);
        const ZState z_u = sample_kernel_state(params, s, u, z_s, rng);
        const BridgeQuery query{s, t, u, z_s, z_u};
        const BridgeLaw law = bridge_law(params, query);
        const std::int64_t z_t = law.offset + law.law.sample_int(rng);

        // Bayes composition through the forward kernels
        const ZState z_t_state = ZState::level(z_t);
        const double bayes_log =
            kernel_log_mass(params, s, t, z_s, z_t_state) +
            kernel_log_mass(params, t, u, z_t_state, z_u) -
            kernel_log_mass(params, s, u, z_s, z_u);
        const double direct_log = bridge_log_mass(params, query, z_t);
        worst_bayes = std::max(worst_bayes, std::abs(direct_log - bayes_log));

        // harness identities from the closed-form conditional moments
        const ConditionalMoments cm = conditional_moments(params, query);
        const double x_s = z_to_x(params, s, z_s.value());
        const double x_u = z_to_x(params, u, z_u.value());
        const double lh = ((u - t) * x_s + (t - s) * x_u) / (u - s);
        const double qv =
            quadratic_harness_variance(theta, s, t, u, x_s, x_u);
        worst_mean = std::max(worst_mean, std::abs(cm.mean_x - lh));
        worst_var = std::max(worst_var, std::abs(cm.var_x - qv));
      }
      bayes.computed = {worst_bayes};
      bayes.reference = {0.0};
      bayes.pass = worst_bayes <= bayes.tolerance;
      bayes.add_diagnostic("queries", opts.bridge_queries_per_case);
      reports.push_back(std::move(bayes));
    }

    VerificationReport mean_claim;
    mean_claim.claim_id = "harness/conditional-mean/" + theta_tag(theta);
    mean_claim.method = "closed-form";
    mean_claim.tolerance = 1e-10;
    mean_claim.seed = claim_seed(opts, mean_claim.claim_id);
    mean_claim.computed = {worst_mean};
    mean_claim.reference = {0.0};
    mean_claim.pass = worst_mean <= mean_claim.tolerance;
    reports.push_back(std::move(mean_claim));

    VerificationReport var_claim;
    var_claim.claim_id = "harness/conditional-variance/" + theta_tag(theta);
    var_claim.method = "closed-form";
    var_claim.tolerance = 1e-10;
    var_claim.seed = claim_seed(opts, var_claim.claim_id);
    var_claim.computed = {worst_var};
    var_claim.reference = {0.0};
    var_claim.pass = worst_var <= var_claim.tolerance;
    reports.push_back(std::move(var_claim));
  }
  return reports;
}

namespace detail {
VerificationReport inversion_delta_gamma_mc(const SuiteOptions& opts);
}

std::vector<VerificationReport> check_inversion(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;

  for (double theta : opts.thetas) {
    const ProcessParams params(theta);

    // marginal laws coincide under t <-> 1/t
    {
      VerificationReport rep;
      rep.claim_id = "inversion/marginal-identity/" + theta_tag(theta);
      rep.method = "closed-form";
      rep.tolerance = 1e-12;
      double worst = 0.0;
      for (double t : {0.25, 0.4, 0.8, 1.25, 2.5, 4.0}) {
        const TransitionLaw at_t = marginal(params, t);
        const TransitionLaw at_inv = marginal(params, 1.0 / t);
        worst = std::max(worst, std::abs(at_t.r() - at_inv.r()));
        worst = std::max(worst, std::abs(at_t.p() - at_inv.p()));
      }
      rep.computed = {worst};
      rep.reference = {0.0};
      rep.pass = worst <= rep.tolerance;
      reports.push_back(std::move(rep));
    }

    // forward kernel a -> b equals the Bayes-reversed kernel 1/b -> 1/a
    {
      VerificationReport rep;
      rep.claim_id = "inversion/reversed-kernel/" + theta_tag(theta);
      rep.method = "closed-form";
      rep.tolerance = 1e-10;
      rep.seed = claim_seed(opts, rep.claim_id);
      Rng rng(rep.seed);
      double worst = 0.0;
      for (int i = 0; i < opts.inversion_pairs; ++i) {
        double a, b;
        switch (i % 3) {
          case 0:
            a = uniform_in(rng, 0.05, 0.6);
            b = uniform_in(rng, a + 0.05, 0.95);
            break;
          case 1:
            a = uniform_in(rng, 1.05, 2.5);
            b = uniform_in(rng, a + 0.1, 5.0);
            break;
          default:
            a = uniform_in(rng, 0.05, 0.9);
            b = uniform_in(rng, 1.1, 5.0);
            break;
        }
        const ZState z_a = sample_marginal_state(params, a, rng);
        const ZState z_b = sample_kernel_state(params, a, b, z_a, rng);
        const double forward = kernel_log_mass(params, a, b, z_a, z_b);
        const double reversed =
            reversed_kernel_log_mass(params, a, b, z_a, z_b);
        worst = std::max(worst, std::abs(forward - reversed));
      }
      rep.computed = {worst};
      rep.reference = {0.0};
      rep.pass = worst <= rep.tolerance;
      rep.add_diagnostic("pairs", opts.inversion_pairs);
      reports.push_back(std::move(rep));
    }

    // downward-jump density equals the reciprocal upward-jump density
    {
      VerificationReport rep;
      rep.claim_id = "inversion/jump-density-reciprocal/" + theta_tag(theta);
      rep.method = "closed-form";
      rep.tolerance = 1e-12;
      rep.seed = claim_seed(opts, rep.claim_id);
      Rng rng(rep.seed);
      double worst = 0.0;
      for (int i = 0; i < opts.density_tuples; ++i) {
        const int k = static_cast<int>(rng.next_u64() % 4);  // k <= 3
        std::vector<double> times(static_cast<std::size_t>(k) + 1);
        for (auto& v : times) v = uniform_in(rng, 1.05, 8.0);
        std::sort(times.begin(), times.end());
        bool distinct = true;
        for (std::size_t j = 1; j < times.size(); ++j) {
          if (times[j] - times[j - 1] < 1e-6) distinct = false;
        }
        if (!distinct) {
          --i;
          continue;
        }
        const double direct = delta_jump_log_density(params, times);
        std::vector<double> recip(times.size());
        double log_jacobian = 0.0;
        for (std::size_t j = 0; j < times.size(); ++j) {
          recip[j] = 1.0 / times[times.size() - 1 - j];
          log_jacobian += 2.0 * std::log(times[j]);
        }
        const double via_gamma =
            gamma_jump_log_density(params, recip) - log_jacobian;
        worst = std::max(worst, std::abs(direct - via_gamma));
      }
      rep.computed = {worst};
      rep.reference = {0.0};
      rep.pass = worst <= rep.tolerance;
      rep.add_diagnostic("tuples", opts.density_tuples);
      reports.push_back(std::move(rep));
    }
  }

  // Monte Carlo: (1/Delta_0, 1/Delta_1) matches (Gamma_0, Gamma_1) in law
  reports.push_back(detail::inversion_delta_gamma_mc(opts));
  return reports;
}

std::vector<VerificationReport> check_limits(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;

  // Poisson-process limit of Z^(eps) at times t_j eps^2
  {
    VerificationReport rep;
    rep.claim_id = "limits/poisson-mgf";
    rep.method = "closed-form";
    rep.tolerance = 1e-3;
    const std::vector<double> times{0.5, 1.0, 2.0};
    const std::vector<double> args{-0.5, -0.3, -0.1};
    const std::vector<double> eps_grid{0.3, 0.1, 0.03, 0.01};
    const double limit = poisson_process_joint_mgf(times, args);
    std::vector<double> gaps;
    for (double eps : eps_grid) {
      JointMgfQuery q;
      for (std::size_t j = 0; j < times.size(); ++j) {
        q.times.push_back(times[j] * eps * eps);
        q.args.push_back(args[j]);
      }
      const ProcessParams params(eps);
      gaps.push_back(std::abs(joint_mgf_z(params, q) - limit));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      monotone = monotone && gaps[i] < gaps[i - 1];
    }
    rep.computed = gaps;
    rep.reference.assign(gaps.size(), 0.0);
    rep.pass = monotone && gaps.back() < rep.tolerance;
    rep.add_diagnostic("limit_value", limit);
    rep.add_diagnostic("monotone", monotone ? 1.0 : 0.0);
    reports.push_back(std::move(rep));
  }

  // Brownian limit of X^(theta); times straddle 1 so the recursion walks
  // through every kernel case
  {
    VerificationReport rep;
    rep.claim_id = "limits/brownian-mgf";
    rep.method = "closed-form";
    rep.tolerance = 1e-3;
    const std::vector<double> times{0.25, 0.5, 1.0, 2.0, 3.0};
    const std::vector<double> args{0.1, 0.1, 0.1, 0.1, 0.1};
    const std::vector<double> theta_grid{0.5, 0.2, 0.05, 0.01};
    const double limit = brownian_joint_mgf(times, args);
    std::vector<double> gaps;
    for (double theta : theta_grid) {
      const ProcessParams params(theta);
      gaps.push_back(
          std::abs(joint_mgf_x(params, {times, args}) - limit));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      monotone = monotone && gaps[i] < gaps[i - 1];
    }
    rep.computed = gaps;
    rep.reference.assign(gaps.size(), 0.0);
    rep.pass = monotone && gaps.back() < rep.tolerance;
    rep.add_diagnostic("limit_value", limit);
    rep.add_diagnostic("monotone", monotone ? 1.0 : 0.0);
    reports.push_back(std::move(rep));
  }

  // n = 1 joint MGF equals the marginal MGF through the X map, and the
  // independent single-time closed form in the birth phase
  for (double theta : opts.thetas) {
    const ProcessParams params(theta);
    VerificationReport rep;
    rep.claim_id = "limits/joint-mgf-single-time/" + theta_tag(theta);
    rep.method = "closed-form";
    rep.tolerance = 1e-12;
    double worst = 0.0;
    for (double t : {0.25, 1.0, 2.5}) {
      const TransitionLaw law = marginal(params, t);
      const XAffine m = x_affine(params, t);
      for (double u : {-0.5, -0.1, 0.1, 0.3}) {
        if (u * m.slope >= 0.999 * law.mgf_upper_bound()) continue;
        const double via_joint = joint_mgf_x(params, {{t}, {u}});
        const double direct =
            std::exp(u * m.intercept) * law.mgf(u * m.slope);
        worst = std::max(worst, std::abs(via_joint - direct));
        if (t < 1.0) {
          // closed form ((1-t)/(e^{u t theta} - t e^{u theta}))^{1/theta^2}
          const double closed = std::pow(
              (1.0 - t) / (std::exp(u * t * theta) - t * std::exp(u * theta)),
              params.r0());
          worst = std::max(worst, std::abs(via_joint - closed) /
                                      std::max(1.0, closed));
        }
      }
    }
    rep.computed = {worst};
    rep.reference = {0.0};
    rep.pass = worst <= rep.tolerance;
    reports.push_back(std::move(rep));
  }

  return reports;
}

}  // namespace bipois
