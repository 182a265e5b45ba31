#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bipois::cli {

/// Resolved run configuration. An optional --config JSON file provides
/// values first; command-line flags override them. theta may come directly
/// or through an (eta, theta) pair, which is reduced to the canonical
/// parameter with the scaling recorded in output metadata.
struct RunConfig {
  std::string command;  // simulate | kernel | verify

  double theta = 1.0;
  std::optional<double> eta;  // triggers reduction when present

  // simulate
  double horizon = 3.0;
  double window = 1e-6;
  std::int64_t k_max = 1'000'000;
  std::uint64_t seed = 42;
  std::string out;            // events CSV path
  std::string grid_out;       // optional dense grid CSV path
  double grid_step = 0.01;

  // kernel / bridge query
  std::optional<double> s, t, u;
  std::optional<double> z, zu;
  std::int64_t table = 0;  // rows of the log-mass table to include

  // verify
  std::string suite = "all";
  bool quick = false;  // reduced sizes, for smoke runs
  bool theta_given = false;  // restrict verify suites to the single theta

  // tolerance overrides
  std::optional<double> eps_check;
  std::optional<double> eps_tail;

  struct Resolved {
    double theta = 1.0;
    double time_scale = 1.0;
    double space_scale = 1.0;
    bool negate = false;
    bool reduced = false;
  };
  Resolved resolve_theta() const;
};

/// Loads JSON key/values into cfg. Unknown keys or wrong types are usage
/// errors (std::invalid_argument).
void load_config_file(const std::string& path, RunConfig& cfg);

}  // namespace bipois::cli
