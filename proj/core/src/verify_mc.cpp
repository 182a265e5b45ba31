#include <algorithm>
#include <array>
#include <cmath>

#include "bipois/jump_density.hpp"
#include "bipois/kernel.hpp"
#include "bipois/numeric.hpp"
#include "bipois/quadrature.hpp"
#include "bipois/stats.hpp"
#include "bipois/trajectory.hpp"
#include "bipois/verify.hpp"
#include "verify_internal.hpp"

namespace bipois {

using detail::claim_seed;
using detail::mix;
using detail::parallel_paths;
using detail::run_mc_protocol;
using detail::theta_tag;

namespace {

constexpr std::array<double, 4> kMomentTimes{0.25, 0.5, 2.0, 4.0};
constexpr std::array<std::pair<double, double>, 4> kCovariancePairs{
    {{0.25, 0.5}, {0.5, 2.0}, {2.0, 4.0}, {0.5, 1.0}}};

struct MomentState {
  std::array<RunningMoments, 4> x;
  std::array<RunningMoments, 4> x_squared;
  std::array<RunningMoments, 4> products;
  RunningMoments x1_fourth;

  void merge(const MomentState& o) {
    for (std::size_t i = 0; i < 4; ++i) {
      x[i].merge(o.x[i]);
      x_squared[i].merge(o.x_squared[i]);
      products[i].merge(o.products[i]);
    }
    x1_fourth.merge(o.x1_fourth);
  }
};

VerificationReport se_report(std::string claim_id, std::uint64_t seed,
                             std::vector<double> computed,
                             std::vector<double> reference,
                             std::vector<double> ses, std::int64_t paths) {
  VerificationReport rep;
  rep.claim_id = std::move(claim_id);
  rep.method = "monte-carlo";
  rep.seed = seed;
  rep.computed = std::move(computed);
  rep.reference = std::move(reference);
  rep.tolerance = 4.0;  // in units of the per-entry standard error
  rep.pass = true;
  for (std::size_t i = 0; i < rep.computed.size(); ++i) {
    rep.pass = rep.pass &&
               std::abs(rep.computed[i] - rep.reference[i]) <= 4.0 * ses[i];
    rep.add_diagnostic("se_" + std::to_string(i), ses[i]);
  }
  rep.add_diagnostic("paths", static_cast<double>(paths));
  return rep;
}

}  // namespace

std::vector<VerificationReport> check_moments(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;
  for (double theta : opts.thetas) {
    const ProcessParams params(theta);
    const std::uint64_t seed =
        claim_seed(opts, "moments/" + theta_tag(theta));
    SimOptions sim;
    sim.horizon = 4.0;
    sim.window = 0.4;  // realizes t <= 0.6 and t >= 1.4, covering the grid

    const std::int64_t n = opts.moment_paths;
    auto partials = parallel_paths<MomentState>(
        n, [&](MomentState& state, std::int64_t i) {
          Rng rng(seed, static_cast<std::uint64_t>(i));
          const Trajectory traj = simulate_forward(params, sim, rng);
          std::array<double, 4> xs{};
          for (std::size_t k = 0; k < 4; ++k) {
            xs[k] = *traj.x_at(kMomentTimes[k]);
            state.x[k].add(xs[k]);
            state.x_squared[k].add(xs[k] * xs[k]);
          }
          const double x1 = *traj.x_at(1.0);
          state.products[0].add(xs[0] * xs[1]);
          state.products[1].add(xs[1] * xs[2]);
          state.products[2].add(xs[2] * xs[3]);
          state.products[3].add(xs[1] * x1);
          state.x1_fourth.add(x1 * x1 * x1 * x1);
        });
    MomentState total;
    for (const auto& p : partials) total.merge(p);

    {
      std::vector<double> computed, reference, ses;
      for (std::size_t k = 0; k < 4; ++k) {
        computed.push_back(total.x[k].mean());
        reference.push_back(0.0);
        ses.push_back(total.x[k].standard_error());
      }
      reports.push_back(se_report("moments/mean/" + theta_tag(theta), seed,
                                  computed, reference, ses, n));
    }
    {
      std::vector<double> computed, reference, ses;
      for (std::size_t k = 0; k < 4; ++k) {
        computed.push_back(total.x_squared[k].mean());
        reference.push_back(kMomentTimes[k]);
        ses.push_back(total.x_squared[k].standard_error());
      }
      reports.push_back(se_report("moments/second-moment/" + theta_tag(theta),
                                  seed, computed, reference, ses, n));
    }
    {
      std::vector<double> computed, reference, ses;
      for (std::size_t k = 0; k < 4; ++k) {
        computed.push_back(total.products[k].mean());
        reference.push_back(std::min(kCovariancePairs[k].first,
                                     kCovariancePairs[k].second));
        ses.push_back(total.products[k].standard_error());
      }
      reports.push_back(se_report("moments/covariance/" + theta_tag(theta),
                                  seed, computed, reference, ses, n));
    }
    if (theta == 1.0) {
      // Fourth moment of X_1 against the published closed form
      // 2t^2 + (t + 3t^2 + t^3) theta^2 (= 7 here). The construction
      // itself gives E X_1^4 = theta^4 * (central 4th moment of
      // Gamma(1/theta^2, 1)) = 3 + 6 theta^2 = 9, so this reference is
      // inconsistent with the process and the claim reports red; the
      // companion claim below verifies the exact value.
      reports.push_back(se_report(
          "moments/x1-fourth-moment/" + theta_tag(theta), seed,
          {total.x1_fourth.mean()}, {2.0 + 5.0 * theta * theta},
          {total.x1_fourth.standard_error()}, n));
    }
    reports.push_back(se_report(
        "moments/x1-fourth-moment-exact/" + theta_tag(theta), seed,
        {total.x1_fourth.mean()}, {3.0 + 6.0 * theta * theta},
        {total.x1_fourth.standard_error()}, n));
  }
  return reports;
}

namespace {

// joint histogram of (Z_{0.5}, Z_2) with both coordinates capped
constexpr std::int64_t kTwoSimCap = 7;

std::vector<std::int64_t> two_sim_histogram(const ProcessParams& params,
                                            const SimOptions& sim,
                                            std::int64_t n_paths,
                                            std::uint64_t seed,
                                            bool forward) {
  struct Hist {
    std::array<std::int64_t, (kTwoSimCap + 1) * (kTwoSimCap + 1)> cells{};
  };
  auto partials = parallel_paths<Hist>(n_paths, [&](Hist& h, std::int64_t i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const Trajectory traj = forward
                                ? simulate_forward(params, sim, rng)
                                : simulate_by_representation(params, sim, rng);
    const auto z05 = std::min<std::int64_t>(
        static_cast<std::int64_t>(*traj.z_at(0.5)), kTwoSimCap);
    const auto z2 = std::min<std::int64_t>(
        static_cast<std::int64_t>(*traj.z_at(2.0)), kTwoSimCap);
    ++h.cells[static_cast<std::size_t>(z05 * (kTwoSimCap + 1) + z2)];
  });
  std::vector<std::int64_t> out((kTwoSimCap + 1) * (kTwoSimCap + 1), 0);
  for (const auto& p : partials) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += p.cells[c];
  }
  return out;
}

struct RepresentationRecord {
  double z1 = 0.0;
  std::int64_t birth_first_half = 0;
  std::int64_t birth_second_half = 0;
  std::int64_t death_window = 0;
};

double gamma_density_cell_probability(const ProcessParams& params, double lo0,
                                      double hi0, double lo1, double hi1) {
  auto outer = [&](double s1) {
    const double inner_hi = std::min(hi0, s1);
    if (inner_hi <= lo0) return 0.0;
    auto inner = [&](double s0) {
      const std::array<double, 2> pt{s0, s1};
      return std::exp(gamma_jump_log_density(params, pt));
    };
    return gauss_legendre_adaptive(inner, lo0, inner_hi, 1e-11).value;
  };
  return gauss_legendre_adaptive(outer, lo1, hi1, 1e-10).value;
}

}  // namespace

namespace detail {

VerificationReport inversion_delta_gamma_mc(const SuiteOptions& opts) {
  const ProcessParams params(1.0);
  VerificationReport rep;
  rep.claim_id = "inversion/delta-gamma-joint-law";
  run_mc_protocol(opts, rep, [&](std::uint64_t rep_seed) {
    constexpr int kEdges = 5;  // grid 0.2 wide on (0,1)
    auto bin_pair = [&](double g0, double g1) {
      const int i = std::min(static_cast<int>(g0 * kEdges), kEdges - 1);
      const int j = std::min(static_cast<int>(g1 * kEdges), kEdges - 1);
      return static_cast<std::size_t>(i * kEdges + j);
    };
    struct Hists {
      std::array<std::int64_t, kEdges * kEdges> gamma{};
      std::array<std::int64_t, kEdges * kEdges> delta{};
    };
    auto partials = parallel_paths<Hists>(
        opts.mc_joint_paths, [&](Hists& h, std::int64_t i) {
          Rng rng(rep_seed, static_cast<std::uint64_t>(i));
          const auto gammas =
              sample_first_birth_jumps(params, 2, 1.0, rng);
          ++h.gamma[bin_pair((*gammas)[0], (*gammas)[1])];
          const auto deltas = sample_first_death_jumps(params, 2, rng);
          ++h.delta[bin_pair(1.0 / deltas[0], 1.0 / deltas[1])];
        });
    std::vector<std::int64_t> a(kEdges * kEdges, 0), b(kEdges * kEdges, 0);
    for (const auto& p : partials) {
      for (std::size_t c = 0; c < a.size(); ++c) {
        a[c] += p.gamma[c];
        b[c] += p.delta[c];
      }
    }
    return chi_square_two_sample(a, b).p_value;
  });
  rep.add_diagnostic("paths_per_seed", static_cast<double>(opts.mc_joint_paths));
  return rep;
}

}  // namespace detail

std::vector<VerificationReport> check_representation(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;

  // Forward construction and Poisson-representation construction agree on
  // the joint law of (Z_{0.5}, Z_2).
  {
    const ProcessParams params(1.0);
    SimOptions sim;
    sim.horizon = 2.0;
    sim.window = 0.25;
    VerificationReport rep;
    rep.claim_id = "representation/two-simulators";
    run_mc_protocol(opts, rep, [&](std::uint64_t rep_seed) {
      const auto ha = two_sim_histogram(params, sim, opts.two_simulator_paths,
                                        mix(rep_seed, 1), /*forward=*/true);
      const auto hb = two_sim_histogram(params, sim, opts.two_simulator_paths,
                                        mix(rep_seed, 2), /*forward=*/false);
      return chi_square_two_sample(ha, hb).p_value;
    });
    rep.add_diagnostic("paths_per_simulator",
                       static_cast<double>(opts.two_simulator_paths));
    reports.push_back(std::move(rep));
  }

  for (double theta : opts.thetas) {
    const ProcessParams params(theta);

    // Conditional Poissonity, independence and mixing diagnostics from one
    // batch of forward paths. Arrival coordinates are recovered from the
    // jump times through a = s / (theta (1 - s)).
    {
      SimOptions sim;
      sim.horizon = 3.0;
      sim.window = 0.3;
      const double a_max = (1.0 - sim.window) / (theta * sim.window);
      const double a_half = 0.5 * a_max;
      const std::uint64_t seed =
          claim_seed(opts, "representation/paths/" + theta_tag(theta));
      const std::int64_t n = opts.representation_paths;

      using Records = std::vector<RepresentationRecord>;
      auto partials = parallel_paths<Records>(n, [&](Records& out,
                                                     std::int64_t i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const Trajectory traj = simulate_forward(params, sim, rng);
        RepresentationRecord rec;
        rec.z1 = traj.z1;
        for (double s : traj.birth_jumps) {
          const double a = s / (theta * (1.0 - s));
          if (a <= a_half) {
            ++rec.birth_first_half;
          } else if (a <= a_max) {
            ++rec.birth_second_half;
          }
        }
        for (double tjump : traj.death_jumps) {
          if (tjump > 2.0) ++rec.death_window;
        }
        out.push_back(rec);
      });
      Records records;
      records.reserve(static_cast<std::size_t>(n));
      for (auto& p : partials) {
        records.insert(records.end(), p.begin(), p.end());
      }
      std::sort(records.begin(), records.end(),
                [](const auto& a, const auto& b) { return a.z1 < b.z1; });

      constexpr int kBins = 20;
      const std::size_t bin_size = records.size() / kBins;
      double worst_dispersion_z = 0.0;
      double worst_corr = 0.0;
      double corr_bound = 0.0;
      for (int bin = 5; bin < 15; ++bin) {  // central ventiles of z1
        std::vector<std::int64_t> birth_counts, death_counts;
        std::vector<double> bd, dd;
        for (std::size_t i = bin * bin_size; i < (bin + 1) * bin_size; ++i) {
          const auto& r = records[i];
          birth_counts.push_back(r.birth_first_half + r.birth_second_half);
          death_counts.push_back(r.death_window);
          bd.push_back(static_cast<double>(birth_counts.back()));
          dd.push_back(static_cast<double>(death_counts.back()));
        }
        worst_dispersion_z =
            std::max({worst_dispersion_z,
                      std::abs(dispersion_index(birth_counts).z_score),
                      std::abs(dispersion_index(death_counts).z_score)});
        worst_corr = std::max(worst_corr, std::abs(correlation(bd, dd)));
        corr_bound = 4.0 / std::sqrt(static_cast<double>(bin_size));
      }

      {
        VerificationReport rep;
        rep.claim_id = "representation/dispersion/" + theta_tag(theta);
        rep.method = "monte-carlo";
        rep.seed = seed;
        rep.computed = {worst_dispersion_z};
        rep.reference = {0.0};
        rep.tolerance = 4.0;
        rep.pass = worst_dispersion_z <= 4.0;
        rep.add_diagnostic("paths", static_cast<double>(n));
        rep.add_diagnostic("bins_tested", 10);
        reports.push_back(std::move(rep));
      }
      {
        VerificationReport rep;
        rep.claim_id = "representation/independence/" + theta_tag(theta);
        rep.method = "monte-carlo";
        rep.seed = seed;
        rep.computed = {worst_corr};
        rep.reference = {0.0};
        rep.tolerance = corr_bound;
        rep.pass = worst_corr <= corr_bound;
        reports.push_back(std::move(rep));
      }
      {
        // gamma mixing makes the unconditional counts overdispersed
        std::vector<std::int64_t> all_counts;
        all_counts.reserve(records.size());
        for (const auto& r : records) {
          all_counts.push_back(r.birth_first_half + r.birth_second_half);
        }
        const DispersionResult d = dispersion_index(all_counts);
        VerificationReport rep;
        rep.claim_id = "representation/overdispersion/" + theta_tag(theta);
        rep.method = "monte-carlo";
        rep.seed = seed;
        rep.computed = {d.index};
        rep.reference = {1.0};
        rep.tolerance = 4.0;
        rep.pass = d.z_score > 4.0;  // one-sided: strictly above Poisson
        rep.add_diagnostic("z_score", d.z_score);
        reports.push_back(std::move(rep));
      }
      {
        // homogeneous increments: equal arrival windows, equal means
        RunningMoments diff;
        for (const auto& r : records) {
          diff.add(static_cast<double>(r.birth_first_half -
                                       r.birth_second_half));
        }
        VerificationReport rep;
        rep.claim_id =
            "representation/equal-window-means/" + theta_tag(theta);
        rep.method = "monte-carlo";
        rep.seed = seed;
        rep.computed = {diff.mean()};
        rep.reference = {0.0};
        rep.tolerance = 4.0;
        rep.pass = std::abs(diff.mean()) <= 4.0 * diff.standard_error();
        rep.add_diagnostic("se", diff.standard_error());
        reports.push_back(std::move(rep));
      }
    }

    // The upward-jump density integrates to one (k = 0 and k = 1).
    {
      VerificationReport rep;
      rep.claim_id =
          "representation/gamma-density-normalization/" + theta_tag(theta);
      rep.method = "quadrature";
      rep.tolerance = 1e-6;
      auto k0 = tanh_sinh(
          [&](double s) {
            const std::array<double, 1> pt{s};
            return std::exp(gamma_jump_log_density(params, pt));
          },
          0.0, 1.0, 1e-9);
      auto k1 = tanh_sinh(
          [&](double s1) {
            auto inner = [&](double s0) {
              const std::array<double, 2> pt{s0, s1};
              return std::exp(gamma_jump_log_density(params, pt));
            };
            return tanh_sinh(inner, 0.0, s1, 1e-10).value;
          },
          0.0, 1.0, 1e-9);
      rep.computed = {k0.value, k1.value};
      rep.reference = {1.0, 1.0};
      rep.pass = std::abs(k0.value - 1.0) <= rep.tolerance &&
                 std::abs(k1.value - 1.0) <= rep.tolerance;
      rep.add_diagnostic("k0_level", k0.refinement_level);
      rep.add_diagnostic("k1_level", k1.refinement_level);
      reports.push_back(std::move(rep));
    }

    // Histogram of simulated (Gamma_0, Gamma_1) against the density.
    {
      SimOptions sim;
      sim.horizon = 1.5;
      sim.window = 0.4;  // birth realized on [0, 0.6]
      constexpr double kEdge = 0.15;
      constexpr int kCells = 4;  // [0, 0.6) split in 0.15 steps
      // expected probabilities by quadrature over each (i <= j) cell
      std::vector<double> probs(kCells * kCells, 0.0);
      for (int i = 0; i < kCells; ++i) {
        for (int j = i; j < kCells; ++j) {
          probs[static_cast<std::size_t>(i * kCells + j)] =
              gamma_density_cell_probability(params, i * kEdge,
                                             (i + 1) * kEdge, j * kEdge,
                                             (j + 1) * kEdge);
        }
      }
      VerificationReport rep;
      rep.claim_id =
          "representation/gamma-density-histogram/" + theta_tag(theta);
      const std::int64_t per_seed =
          std::max<std::int64_t>(opts.histogram_paths / opts.mc_seeds, 1000);
      run_mc_protocol(opts, rep, [&](std::uint64_t rep_seed) {
        struct Hist {
          std::array<std::int64_t, kCells * kCells> cells{};
          std::int64_t total = 0;
        };
        auto partials =
            parallel_paths<Hist>(per_seed, [&](Hist& h, std::int64_t i) {
              Rng rng(rep_seed, static_cast<std::uint64_t>(i));
              const Trajectory traj = simulate_forward(params, sim, rng);
              ++h.total;
              if (traj.birth_jumps.size() < 2) return;  // overflow cell
              const double g0 = traj.birth_jumps[0];
              const double g1 = traj.birth_jumps[1];
              if (g0 >= kCells * kEdge || g1 >= kCells * kEdge) return;
              const int i0 = static_cast<int>(g0 / kEdge);
              const int j0 = static_cast<int>(g1 / kEdge);
              ++h.cells[static_cast<std::size_t>(i0 * kCells + j0)];
            });
        std::vector<std::int64_t> counts(kCells * kCells, 0);
        std::int64_t total = 0;
        for (const auto& p : partials) {
          total += p.total;
          for (std::size_t c = 0; c < counts.size(); ++c) {
            counts[c] += p.cells[c];
          }
        }
        return chi_square_gof(counts, probs, total).p_value;
      });
      rep.add_diagnostic("paths_per_seed", static_cast<double>(per_seed));
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

std::vector<VerificationReport> check_hitting(const SuiteOptions& opts) {
  std::vector<VerificationReport> reports;
  const std::array<double, 3> grid{2.0, 5.0, 10.0};
  for (double theta : opts.thetas) {
    const ProcessParams params(theta);
    const std::uint64_t seed =
        claim_seed(opts, "hitting/" + theta_tag(theta));
    const std::int64_t n = opts.hitting_paths;

    struct HitState {
      std::array<std::int64_t, 3> exceed{};
      std::int64_t finite = 0;
    };
    auto partials =
        parallel_paths<HitState>(n, [&](HitState& st, std::int64_t i) {
          Rng rng(seed, static_cast<std::uint64_t>(i));
          const double d0 = sample_delta0(params, rng);
          if (std::isfinite(d0)) ++st.finite;
          for (std::size_t k = 0; k < grid.size(); ++k) {
            if (d0 > grid[k]) ++st.exceed[k];
          }
        });
    HitState total;
    for (const auto& p : partials) {
      total.finite += p.finite;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        total.exceed[k] += p.exceed[k];
      }
    }

    {
      VerificationReport rep;
      rep.claim_id = "hitting/survival/" + theta_tag(theta);
      rep.method = "monte-carlo";
      rep.seed = seed;
      rep.tolerance = 4.0;
      rep.pass = true;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double p_hat = static_cast<double>(total.exceed[k]) /
                             static_cast<double>(n);
        const double p_ref = delta0_survival(params, grid[k]);
        const double se =
            std::sqrt(p_ref * (1.0 - p_ref) / static_cast<double>(n));
        rep.computed.push_back(p_hat);
        rep.reference.push_back(p_ref);
        rep.pass = rep.pass && std::abs(p_hat - p_ref) <= 4.0 * se;
        rep.add_diagnostic("se_" + std::to_string(k), se);
      }
      rep.add_diagnostic("paths", static_cast<double>(n));
      reports.push_back(std::move(rep));
    }
    {
      VerificationReport rep;
      rep.claim_id = "hitting/finiteness/" + theta_tag(theta);
      rep.method = "monte-carlo";
      rep.seed = seed;
      rep.computed = {static_cast<double>(total.finite)};
      rep.reference = {static_cast<double>(n)};
      rep.tolerance = 0.0;
      rep.pass = total.finite == n;
      reports.push_back(std::move(rep));
    }
    {
      // divergence witness: the partial integrals of the survival function
      // outgrow 0.9 * min(1, r0) * k at T = e^k
      VerificationReport rep;
      rep.claim_id = "hitting/partial-integral-growth/" + theta_tag(theta);
      rep.method = "quadrature";
      rep.tolerance = 0.0;
      rep.pass = true;
      double prev = 0.0;
      for (int k = 2; k <= 8; ++k) {
        const double upper = std::exp(static_cast<double>(k));
        const double integral =
            gauss_legendre_adaptive(
                [&](double t) { return delta0_survival(params, t); }, 1.0,
                upper, 1e-9)
                .value;
        const double bound =
            0.9 * std::min(1.0, params.r0()) * static_cast<double>(k);
        rep.computed.push_back(integral);
        rep.reference.push_back(bound);
        rep.pass = rep.pass && integral > bound && integral > prev;
        prev = integral;
      }
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

}  // namespace bipois
