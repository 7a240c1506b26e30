#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varpol/marketdata.hpp"

namespace varpol::cli {

struct RunConfig {
  std::string input;
  std::string out_dir;                 // flag > file > $VARPOL_OUT_DIR > "varpol_out"
  std::vector<std::string> families;   // empty: subcommand default
  std::vector<std::string> model_files;
  std::vector<double> rates{0.00008, 0.00014, 0.00024};
  double quantile_level = 0.05;
  double confidence = 0.95;
  double txn_rate = 0.10;
  std::optional<double> terminal_pi;   // empty: family default
  std::size_t horizon = 26;
  std::optional<double> wealth_scale;  // empty: 1, or 1000 for the KDE model
  std::optional<double> bandwidth;
  std::string denominator_convention = "auto";  // auto | survival_cur | survival_prev
  WindowSpec windows;
  std::size_t offset = 0;              // returns skipped before carving windows
  std::string transform = "positive";  // positive | absolute | shifted
};

/// Parse CLI arguments (without argv[0]). Flags override the --config file,
/// which overrides the defaults. Returns the selected subcommand through
/// subcommand_out. Throws Error(unknown_flag) / Error(invalid_value).
RunConfig parse_config(const std::vector<std::string>& args, std::string* subcommand_out);

/// Load a JSON (.json) or flat TOML (.toml) config file over `base`.
RunConfig config_from_file(const std::string& path, RunConfig base);

void validate_config(const RunConfig& config);

}  // namespace varpol::cli
