#pragma once

#include <ostream>

#include "cli_config.hpp"

namespace bipois::cli {

/// Exit codes: 0 success / all claims pass, 1 verification failure,
/// 2 usage or I/O error (thrown as std::invalid_argument upstream).
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_kernel(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

int run_command(const RunConfig& cfg, std::ostream& log);

}  // namespace bipois::cli
