#include "bipois/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bipois/transition_law.hpp"

namespace bipois {

namespace {

double positive_exponential(Rng& rng, double rate) {
  double g;
  do {
    g = rng.exponential(rate);
  } while (g == 0.0);  // keep jump times strictly increasing
  return g;
}

}  // namespace

void SimOptions::validate() const {
  if (!(horizon > 1.0)) {
    throw std::invalid_argument("SimOptions: horizon must be > 1");
  }
  if (!(window > 0.0 && window < 1.0)) {
    throw std::invalid_argument("SimOptions: window must be in (0, 1)");
  }
  if (k_max <= 0) {
    throw std::invalid_argument("SimOptions: k_max must be positive");
  }
}

std::optional<double> Trajectory::z_at(double t) const {
  if (t < 0.0 || t > horizon) return std::nullopt;
  if (t == 1.0) return z1;
  if (t < 1.0) {
    if (t > birth_cutoff) return std::nullopt;
    const auto it =
        std::upper_bound(birth_jumps.begin(), birth_jumps.end(), t);
    return static_cast<double>(it - birth_jumps.begin());
  }
  if (t < death_cutoff) return std::nullopt;
  const auto it = std::upper_bound(death_jumps.begin(), death_jumps.end(), t);
  return static_cast<double>(horizon_level + (death_jumps.end() - it));
}

std::optional<double> Trajectory::x_at(double t) const {
  const auto z = z_at(t);
  if (!z) return std::nullopt;
  return z_to_x(ProcessParams(theta), t, *z);
}

Trajectory simulate_forward(const ProcessParams& params,
                            const SimOptions& opts, Rng& rng) {
  opts.validate();
  Trajectory traj;
  traj.theta = params.theta();
  traj.horizon = opts.horizon;

  // Birth phase: Gamma_k = 1 - exp(-sum of sojourn times), sojourn in level
  // j exponential with rate j + r0.
  const double max_log_time = -std::log(opts.window);  // jumps up to 1-window
  double cumulative = 0.0;
  std::int64_t level = 0;
  for (;;) {
    cumulative += positive_exponential(rng, static_cast<double>(level) +
                                                params.r0());
    if (cumulative > max_log_time) break;
    traj.birth_jumps.push_back(-std::expm1(-cumulative));
    ++level;
    if (level >= opts.k_max) {
      traj.birth_truncated = true;
      break;
    }
  }
  traj.birth_cutoff =
      traj.birth_truncated ? traj.birth_jumps.back() : 1.0 - opts.window;

  // Exact gamma bridge from the last realized birth state to Z_1.
  traj.z1 = sample_gamma(static_cast<double>(level) + params.r0(),
                         1.0 - traj.birth_cutoff, rng);

  DeathSegment death = simulate_death_given_z1(params, traj.z1, opts, rng);
  traj.death_jumps = std::move(death.jumps);
  traj.horizon_level = death.horizon_level;
  traj.death_cutoff = death.death_cutoff;
  traj.death_truncated = death.truncated;
  return traj;
}

DeathSegment simulate_death_given_z1(const ProcessParams& params, double z1,
                                     const SimOptions& opts, Rng& rng) {
  opts.validate();
  if (z1 < 0.0) {
    throw std::invalid_argument("simulate_death_given_z1: z1 must be >= 0");
  }
  const double theta = params.theta();
  DeathSegment seg;
  seg.death_cutoff = std::min(1.0 + opts.window, opts.horizon);

  const double rate = theta * z1;
  if (rate == 0.0) return seg;  // absorbed at level 0, path rests at -1/theta

  // Arrival a of the rate theta*z1 stream maps to time 1 + 1/(theta a).
  // Arrivals below a_beyond land past the horizon and only raise the
  // entrance count; arrivals up to a_stop produce jumps inside
  // [death_cutoff, horizon].
  const double a_beyond = 1.0 / (theta * (opts.horizon - 1.0));
  const double a_stop = 1.0 / (theta * opts.window);

  double a = 0.0;
  std::int64_t arrivals = 0;
  std::vector<double> descending;  // jump times, horizon side first
  for (;;) {
    a += positive_exponential(rng, rate);
    if (a > a_stop) break;
    ++arrivals;
    if (a <= a_beyond) {
      ++seg.horizon_level;
    } else {
      descending.push_back(1.0 + 1.0 / (theta * a));
    }
    if (arrivals >= opts.k_max) {
      seg.truncated = true;
      seg.death_cutoff = descending.empty() ? seg.death_cutoff
                                            : descending.back();
      break;
    }
  }
  seg.jumps.assign(descending.rbegin(), descending.rend());
  return seg;
}

Trajectory simulate_by_representation(const ProcessParams& params,
                                      const SimOptions& opts, Rng& rng) {
  opts.validate();
  const double theta = params.theta();
  Trajectory traj;
  traj.theta = theta;
  traj.horizon = opts.horizon;

  traj.z1 = sample_gamma(params.r0(), 1.0, rng);
  const double rate = theta * traj.z1;

  // Birth stream: arrival a maps to s = a / (1/theta + a); jumps inside
  // [0, 1 - window] correspond to arrivals up to (1-window)/(theta*window).
  traj.birth_cutoff = 1.0 - opts.window;
  if (rate > 0.0) {
    const double a_stop = (1.0 - opts.window) / (theta * opts.window);
    double a = 0.0;
    for (;;) {
      a += positive_exponential(rng, rate);
      if (a > a_stop) break;
      traj.birth_jumps.push_back(a / (1.0 / theta + a));
      if (static_cast<std::int64_t>(traj.birth_jumps.size()) >= opts.k_max) {
        traj.birth_truncated = true;
        traj.birth_cutoff = traj.birth_jumps.back();
        break;
      }
    }
  }

  DeathSegment death = simulate_death_given_z1(params, traj.z1, opts, rng);
  traj.death_jumps = std::move(death.jumps);
  traj.horizon_level = death.horizon_level;
  traj.death_cutoff = death.death_cutoff;
  traj.death_truncated = death.truncated;
  return traj;
}

double sample_delta0(const ProcessParams& params, Rng& rng) {
  const double z1 = sample_gamma(params.r0(), 1.0, rng);
  const double a1 = positive_exponential(rng, params.theta() * z1);
  return 1.0 + 1.0 / (params.theta() * a1);
}

std::optional<std::vector<double>> sample_first_birth_jumps(
    const ProcessParams& params, std::size_t count, double cutoff, Rng& rng) {
  std::vector<double> jumps;
  jumps.reserve(count);
  double cumulative = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    cumulative +=
        positive_exponential(rng, static_cast<double>(j) + params.r0());
    const double gamma_j = -std::expm1(-cumulative);
    if (gamma_j > cutoff) return std::nullopt;
    jumps.push_back(gamma_j);
  }
  return jumps;
}

std::vector<double> sample_first_death_jumps(const ProcessParams& params,
                                             std::size_t count, Rng& rng) {
  const double z1 = sample_gamma(params.r0(), 1.0, rng);
  const double rate = params.theta() * z1;
  std::vector<double> deltas;
  deltas.reserve(count);
  double a = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    a += positive_exponential(rng, rate);
    deltas.push_back(1.0 + 1.0 / (params.theta() * a));  // Delta_i
  }
  return deltas;
}

}  // namespace bipois
