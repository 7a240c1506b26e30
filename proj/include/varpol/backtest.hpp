#pragma once

#include <string>
#include <vector>

#include "varpol/policy.hpp"

namespace varpol {

struct BacktestResult {
  std::vector<double> pis;     // horizon entries
  std::vector<double> wealth;  // horizon entries
  std::vector<double> reward;  // horizon - 1 entries, reward[t] = wealth[t] - wealth[t+1]
  std::vector<double> value;   // horizon entries, value.back() == 0
  PolicyConfig config;
  CostMode cost_mode = CostMode::no_cost;
  std::string label;
};

/// Per-period payoff pi_t S_t + (M - pi_t) r over the last `horizon` entries
/// of terminal_returns; with costs, minus (pi_t - pi_{t-1}) r_1 where the
/// first step pays none.
std::vector<double> wealth_path(const PolicyPath& policy,
                                const std::vector<double>& terminal_returns,
                                const PolicyConfig& config);

std::vector<double> reward_path(const std::vector<double>& wealth);

/// Backward recursion u_{t-1} = (L_{t-1} - L_t) + u_t anchored at u_T = 0 on
/// the realized path, so u_t telescopes to L_t - L_T.
std::vector<double> value_path(const std::vector<double>& wealth);

/// One result per (config, cost_mode) pair, labelled "r=<rate>,<cost_mode>".
std::vector<BacktestResult> run_scenarios(const DistModel& model,
                                          const std::vector<double>& terminal_returns,
                                          const std::vector<PolicyConfig>& configs,
                                          const std::vector<CostMode>& cost_modes);

}  // namespace varpol
