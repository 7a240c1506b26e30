#include "varpol/backtest.hpp"

#include <cstdio>

#include "varpol/errors.hpp"

namespace varpol {

std::vector<double> wealth_path(const PolicyPath& policy,
                                const std::vector<double>& terminal_returns,
                                const PolicyConfig& config) {
  const std::size_t h = policy.pis.size();
  if (terminal_returns.size() < h)
    raise(Errc::length_mismatch, "terminal returns shorter than the policy horizon");
  const std::size_t offset = terminal_returns.size() - h;
  const double m = config.wealth_scale;
  std::vector<double> wealth(h);
  for (std::size_t t = 0; t < h; ++t) {
    const double pi = policy.pis[t];
    const double s = terminal_returns[offset + t];
    double l = pi * s + (m - pi) * config.rate;
    if (policy.cost_mode == CostMode::with_cost) {
      const double pi_prev = t == 0 ? pi : policy.pis[t - 1];
      l -= (pi - pi_prev) * config.txn_rate;
    }
    wealth[t] = l;
  }
  return wealth;
}

std::vector<double> reward_path(const std::vector<double>& wealth) {
  if (wealth.size() < 2) raise(Errc::too_short, "reward_path needs at least 2 wealth entries");
  std::vector<double> reward(wealth.size() - 1);
  for (std::size_t t = 0; t + 1 < wealth.size(); ++t) reward[t] = wealth[t] - wealth[t + 1];
  return reward;
}

std::vector<double> value_path(const std::vector<double>& wealth) {
  if (wealth.empty()) raise(Errc::too_short, "value_path needs at least 1 wealth entry");
  std::vector<double> value(wealth.size(), 0.0);
  for (std::size_t t = wealth.size() - 1; t-- > 0;)
    value[t] = (wealth[t] - wealth[t + 1]) + value[t + 1];
  return value;
}

std::vector<BacktestResult> run_scenarios(const DistModel& model,
                                          const std::vector<double>& terminal_returns,
                                          const std::vector<PolicyConfig>& configs,
                                          const std::vector<CostMode>& cost_modes) {
  if (configs.empty()) raise(Errc::invalid_value, "run_scenarios needs at least one config");
  if (cost_modes.empty()) raise(Errc::invalid_value, "run_scenarios needs at least one cost mode");
  std::vector<BacktestResult> out;
  out.reserve(configs.size() * cost_modes.size());
  for (const PolicyConfig& cfg : configs) {
    for (CostMode mode : cost_modes) {
      const PolicyPath path = backward_path(model, cfg, mode);
      BacktestResult res;
      res.pis = path.pis;
      res.wealth = wealth_path(path, terminal_returns, cfg);
      res.reward = res.wealth.size() >= 2 ? reward_path(res.wealth) : std::vector<double>{};
      res.value = value_path(res.wealth);
      res.config = cfg;
      res.cost_mode = mode;
      char buf[64];
      std::snprintf(buf, sizeof buf, "r=%g,%s", cfg.rate,
                    mode == CostMode::no_cost ? "no_cost" : "with_cost");
      res.label = buf;
      out.push_back(std::move(res));
    }
  }
  return out;
}

}  // namespace varpol
