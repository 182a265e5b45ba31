#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bipois/process_params.hpp"
#include "bipois/rng.hpp"

namespace bipois {

/// Simulation controls. Jumps accumulate infinitely on both sides of t = 1,
/// so paths are realized outside a window around it: birth jumps on
/// [0, 1 - window], death jumps on [1 + window, horizon]. No approximation
/// is introduced: Z_1 is bridged from Z_{1-window} with the exact gamma
/// conditional, and the death side comes from the exact Poisson
/// representation restricted to a finite arrival window.
struct SimOptions {
  double horizon = 3.0;        // T > 1
  double window = 1e-6;        // 0 < window < 1
  std::int64_t k_max = 1'000'000;  // event cap per phase

  void validate() const;
};

/// A realized path: birth jump times (level i is exited at
/// birth_jumps[i]), the value z1 of Z_1 = lim (1-t) Z_t, and the death-side
/// jumps inside (1 + window, horizon] stored as ascending times; the level
/// entered at death_jumps[i] is horizon_level + (death_jumps.size()-1-i).
/// horizon_level is Z_horizon, drawn from the entrance law.
struct Trajectory {
  double theta = 1.0;
  double horizon = 3.0;
  double birth_cutoff = 0.0;  // birth simulated on [0, birth_cutoff]
  double death_cutoff = 0.0;  // death simulated on [death_cutoff, horizon]
  std::vector<double> birth_jumps;
  double z1 = 0.0;
  std::vector<double> death_jumps;
  std::int64_t horizon_level = 0;
  bool birth_truncated = false;  // k_max reached before 1 - window
  bool death_truncated = false;

  std::int64_t level_entered_at_death_jump(std::size_t i) const {
    return horizon_level +
           static_cast<std::int64_t>(death_jumps.size() - 1 - i);
  }

  /// Z_t where the path is realized: t <= birth_cutoff, t == 1, or
  /// t in [death_cutoff, horizon]. nullopt elsewhere (inside the window, or
  /// beyond the horizon). At t == 1 the (real) value is z1, rounded by the
  /// caller if needed.
  std::optional<double> z_at(double t) const;

  /// X_t through the affine map; same domain as z_at.
  std::optional<double> x_at(double t) const;
};

/// Forward construction: birth-phase sojourn times are exponential with
/// rate j + 1/theta^2 in level j (the log time change of a homogeneous
/// linear birth process), stopped at 1 - window or k_max events; Z_1 is
/// then drawn from the exact gamma bridge, and the death phase is delegated
/// to simulate_death_given_z1.
Trajectory simulate_forward(const ProcessParams& params,
                            const SimOptions& opts, Rng& rng);

struct DeathSegment {
  std::vector<double> jumps;  // ascending times in [death_cutoff, horizon]
  std::int64_t horizon_level = 0;
  double death_cutoff = 0.0;
  bool truncated = false;
};

/// Death phase given Z_1 = z1: a homogeneous Poisson stream with rate
/// theta * z1 is mapped through t = 1 + 1/(theta * a); arrivals below
/// 1/(theta (horizon-1)) land beyond the horizon and only contribute to the
/// entrance count Z_horizon, arrivals up to 1/(theta * window) land inside
/// (1 + window, horizon]. Exact: never steps the death chain directly.
DeathSegment simulate_death_given_z1(const ProcessParams& params, double z1,
                                     const SimOptions& opts, Rng& rng);

/// Poisson-representation construction: draws z1 ~ Gamma(1/theta^2, 1) and
/// two independent Poisson streams with rate theta * z1; the first maps to
/// birth jumps through s = a/(1/theta + a), the second to death jumps
/// through t = 1 + 1/(theta a). Equal in law to simulate_forward.
Trajectory simulate_by_representation(const ProcessParams& params,
                                      const SimOptions& opts, Rng& rng);

/// First entrance time of level 0 (the time the X path reaches -1/theta and
/// stays), sampled exactly through the representation.
double sample_delta0(const ProcessParams& params, Rng& rng);

/// First k+1 birth jump times (Gamma_0 < ... < Gamma_k), sampled from the
/// sojourn construction without building a full trajectory. Empty optional
/// when the path has fewer than k+1 jumps before cutoff.
std::optional<std::vector<double>> sample_first_birth_jumps(
    const ProcessParams& params, std::size_t count, double cutoff, Rng& rng);

/// First count death jump times Delta_0 > Delta_1 > ..., sampled exactly
/// from the representation (returned in Delta-index order).
std::vector<double> sample_first_death_jumps(const ProcessParams& params,
                                             std::size_t count, Rng& rng);

}  // namespace bipois
