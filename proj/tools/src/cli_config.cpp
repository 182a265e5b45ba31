#include "cli_config.hpp"

#include <fstream>
#include <stdexcept>

#include "bipois/process_params.hpp"
#include "nlohmann/json.hpp"

namespace bipois::cli {

RunConfig::Resolved RunConfig::resolve_theta() const {
  Resolved r;
  if (eta) {
    const ParamReduction red = reduce_params(*eta, theta);
    r.theta = red.canonical.theta();
    r.time_scale = red.time_scale;
    r.space_scale = red.space_scale;
    r.negate = red.negate;
    r.reduced = true;
  } else {
    if (!(theta > 0.0)) {
      throw std::invalid_argument("--theta must be > 0 (or pass --eta too)");
    }
    r.theta = theta;
  }
  return r;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse error: " + std::string(e.what()));
  }
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") cfg.command = value.get<std::string>();
      else if (key == "theta") cfg.theta = value.get<double>();
      else if (key == "eta") cfg.eta = value.get<double>();
      else if (key == "horizon") cfg.horizon = value.get<double>();
      else if (key == "window") cfg.window = value.get<double>();
      else if (key == "k_max") cfg.k_max = value.get<std::int64_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "grid_out") cfg.grid_out = value.get<std::string>();
      else if (key == "grid_step") cfg.grid_step = value.get<double>();
      else if (key == "s") cfg.s = value.get<double>();
      else if (key == "t") cfg.t = value.get<double>();
      else if (key == "u") cfg.u = value.get<double>();
      else if (key == "z") cfg.z = value.get<double>();
      else if (key == "zu") cfg.zu = value.get<double>();
      else if (key == "table") cfg.table = value.get<std::int64_t>();
      else if (key == "suite") cfg.suite = value.get<std::string>();
      else if (key == "quick") cfg.quick = value.get<bool>();
      else if (key == "eps_check") cfg.eps_check = value.get<double>();
      else if (key == "eps_tail") cfg.eps_tail = value.get<double>();
      else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument("config key '" + key + "' has wrong type");
    }
  }
}

}  // namespace bipois::cli
