#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bipois {

struct Tolerances {
  double eps_tail = 1e-16;   // adaptive tail-sum stopping ratio
  double eps_check = 1e-9;   // absolute tolerance on probability identities
};

/// Canonical process parameter theta > 0 (the (eta, theta) pair reduces to
/// (theta*, theta*), see reduce_params) together with the numeric
/// tolerances used by the verification machinery. r0 = 1/theta^2 is the
/// immigration shape that appears in every kernel.
class ProcessParams {
 public:
  explicit ProcessParams(double theta, Tolerances tol = {})
      : theta_(theta), r0_(1.0 / (theta * theta)), tol_(tol) {
    if (!(theta > 0.0)) {
      throw std::invalid_argument("ProcessParams requires theta > 0");
    }
  }

  double theta() const noexcept { return theta_; }
  double r0() const noexcept { return r0_; }
  const Tolerances& tol() const noexcept { return tol_; }

 private:
  double theta_;
  double r0_;
  Tolerances tol_;
};

/// Affine reduction of a general parameter pair (eta, theta) with
/// eta*theta > 0 to the canonical pair (theta*, theta*). The original
/// process maps to the canonical one by X'_t = sign * space_scale *
/// X_{t * time_scale}, with sign = -1 when both parameters are negative.
struct ParamReduction {
  ProcessParams canonical;
  double time_scale = 1.0;   // canonical time t corresponds to original t*time_scale
  double space_scale = 1.0;
  bool negate = false;
};

ParamReduction reduce_params(double eta, double theta, Tolerances tol = {});

enum class Phase { kBirth, kOne, kDeath };  // t < 1, t == 1, t > 1

inline Phase phase_of(double t) {
  if (t < 0.0) throw std::invalid_argument("phase_of: negative time");
  if (t < 1.0) return Phase::kBirth;
  if (t == 1.0) return Phase::kOne;
  return Phase::kDeath;
}

/// Phase-typed state of Z_t: a nonnegative integer level away from t = 1
/// and a nonnegative real at the continuous instant t = 1. The tag blocks
/// category errors such as feeding a real into a birth-phase pmf.
class ZState {
 public:
  static ZState level(std::int64_t k) {
    if (k < 0) throw std::invalid_argument("ZState::level requires k >= 0");
    ZState s;
    s.is_level_ = true;
    s.level_ = k;
    s.value_ = static_cast<double>(k);
    return s;
  }

  static ZState continuous(double x) {
    if (!(x >= 0.0)) {
      throw std::invalid_argument("ZState::continuous requires x >= 0");
    }
    ZState s;
    s.is_level_ = false;
    s.value_ = x;
    return s;
  }

  bool is_level() const noexcept { return is_level_; }

  std::int64_t level() const {
    if (!is_level_) {
      throw std::domain_error("ZState: continuous state used as a level");
    }
    return level_;
  }

  double value() const noexcept { return value_; }

  /// Checks the state tag against the phase of time t.
  void require_phase(double t, const char* what) const {
    const bool need_level = (phase_of(t) != Phase::kOne);
    if (need_level != is_level_) {
      throw std::domain_error(std::string(what) +
                              (need_level
                                   ? ": integer level required for t != 1"
                                   : ": continuous state required at t = 1"));
    }
  }

 private:
  bool is_level_ = true;
  std::int64_t level_ = 0;
  double value_ = 0.0;
};

/// The piecewise-affine map from Z to X space and its inverse. For t != 1
/// the inverse snaps to the integer lattice and rejects points further than
/// snap_tol from it.
double z_to_x(const ProcessParams& params, double t, double z);
ZState x_to_z(const ProcessParams& params, double t, double x,
              double snap_tol = 1e-9);

/// Slope and intercept of the map X_t = slope * Z_t + intercept.
struct XAffine {
  double slope = 0.0;
  double intercept = 0.0;
};
XAffine x_affine(const ProcessParams& params, double t);

}  // namespace bipois
