#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "varpol/errors.hpp"
#include "varpol/execute.hpp"
#include "varpol/run_config.hpp"

namespace {

int fail(int exit_code, const std::string& code, const std::string& message) {
  nlohmann::json j;
  j["error"]["code"] = code;
  j["error"]["exit"] = exit_code;
  j["error"]["message"] = message;
  std::fprintf(stderr, "%s\n", j.dump().c_str());
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    std::printf(
        "usage: varpol <fit|gof|policy|backtest|compare> --input prices.csv [options]\n"
        "\n"
        "options:\n"
        "  --input PATH           CSV with header 'date,close'\n"
        "  --out-dir DIR          output directory (or $VARPOL_OUT_DIR, default varpol_out)\n"
        "  --config PATH          JSON or flat TOML config file\n"
        "  --family NAME          pareto|weibull|invgauss|mixnormal|vargamma|kde (repeatable)\n"
        "  --model PATH           fitted-model JSON from a previous run (repeatable)\n"
        "  --rate R               riskfree rate (repeatable; default 0.00008 0.00014 0.00024)\n"
        "  --quantile Q           VaR quantile level (default 0.05)\n"
        "  --confidence C         coverage confidence (default 0.95)\n"
        "  --txn-rate R1          transaction cost rate (default 0.10)\n"
        "  --terminal-pi PI       terminal allocation (default per family)\n"
        "  --horizon N            policy horizon (default 26)\n"
        "  --wealth-scale M       investible wealth (default 1; kde 1000)\n"
        "  --bandwidth H          KDE bandwidth override\n"
        "  --denominator-convention auto|survival_cur|survival_prev\n"
        "  --fit-len/--holdout-len/--terminal-len  window sizes (default 700/50/26)\n"
        "  --offset N             returns skipped before carving windows\n"
        "  --transform T          positive|absolute|shifted sample mapping\n");
    return args.empty() ? 64 : 0;
  }

  try {
    std::string subcommand;
    const varpol::cli::RunConfig cfg = varpol::cli::parse_config(args, &subcommand);
    const auto files = varpol::cli::execute(cfg, subcommand);
    for (const std::string& f : files) std::printf("%s\n", f.c_str());
    return 0;
  } catch (const varpol::Error& e) {
    return fail(varpol::errc_exit_code(e.code()), varpol::errc_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}
