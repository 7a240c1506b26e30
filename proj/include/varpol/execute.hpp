#pragma once

#include <string>
#include <vector>

#include "varpol/run_config.hpp"

namespace varpol::cli {

/// Run one subcommand (fit | gof | policy | backtest | compare) and return
/// the paths written. Outputs are written atomically; module errors
/// propagate as varpol::Error.
std::vector<std::string> execute(const RunConfig& config, const std::string& subcommand);

}  // namespace varpol::cli
