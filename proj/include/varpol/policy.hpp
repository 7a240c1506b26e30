#pragma once

#include <optional>
#include <vector>

#include "varpol/dists.hpp"

namespace varpol {

// The policy recursion keeps P(L_{t-1} > Q | L_t > Q) at the confidence
// level. Wealth clears the quantile Q exactly when the risky return clears
// the threshold K(pi) = (q + r(pi - M)) / pi, so the constraint reduces to
// CDF differences at two thresholds. One bisection solver serves every
// distribution family.

/// Which threshold the survival weight in the denominator uses. The two
/// displayed forms of the constraint disagree; both are supported.
enum class DenomConvention { survival_cur, survival_prev };

enum class CostMode { no_cost, with_cost };

struct PolicyConfig {
  double rate = 0.00014;        // per-period riskfree return
  double quantile_level = 0.05;
  double confidence = 0.95;
  double wealth_scale = 1.0;    // M
  double txn_rate = 0.10;       // r_1, applies in with_cost mode
  double terminal_pi = 0.1;
  std::size_t horizon = 26;
  std::optional<DenomConvention> denominator_convention;  // empty: family default
};

/// survival_prev for the KDE model, survival_cur for the parametric families,
/// unless the config pins one explicitly.
DenomConvention resolve_convention(const PolicyConfig& config, const DistModel& model);

/// K(pi) = (q + r(pi - M)) / pi.
double var_threshold(double pi, const PolicyConfig& config, double q);

/// Threshold with the proportional rebalancing charge against the adjacent
/// known allocation: (q + r(pi - M) + r_1 (pi - pi_adjacent)) / pi.
double cost_adjusted_threshold(double pi, double pi_adjacent, const PolicyConfig& config, double q);

/// [F(K_cur) - F(K_prev)] / (1 - [F(K_denom) - F(0)]), clamped to [0, 1];
/// a negative numerator reports 0.
double coverage_prob(const DistModel& model, double pi_prev, double pi_cur,
                     const PolicyConfig& config, double q);

/// Coverage with both thresholds cost-adjusted; pi_prev is charged for the
/// move to pi_cur and pi_cur for the move to pi_next. Reduces exactly to
/// coverage_prob when txn_rate is 0.
double coverage_prob_with_cost(const DistModel& model, double pi_prev, double pi_cur,
                               double pi_next, const PolicyConfig& config, double q);

struct StepResult {
  double pi = 0;
  bool feasible = true;  // false: confidence unreachable, pi clamped to a bracket end
  int side = 0;          // +1 feasibility lies at larger pi, -1 at smaller, 0 flat
};

/// Binding earlier allocation: bisection over (1e-9 M, M] for the point where
/// coverage equals the confidence level. Verifies monotonicity by sampling
/// first (throws non_monotone otherwise); when the level is unreachable the
/// bracket end closest to it is returned with feasible = false.
StepResult solve_step_no_cost(const DistModel& model, double pi_cur, const PolicyConfig& config,
                              double q);

/// Same contract with cost-adjusted thresholds; reduces to the no-cost step
/// when txn_rate is 0.
StepResult solve_step_with_cost(const DistModel& model, double pi_cur, double pi_next,
                                const PolicyConfig& config, double q);

struct PolicyPath {
  std::vector<double> pis;        // horizon entries, pis.back() = terminal_pi
  std::vector<StepResult> steps;  // aligned with pis
  PolicyConfig config;
  CostMode cost_mode = CostMode::no_cost;
  double quantile_value = 0;      // q used by the solver
};

/// Backward recursion from the terminal allocation. With transaction costs
/// the chain is second order and the last two entries are seeded with
/// terminal_pi.
PolicyPath backward_path(const DistModel& model, const PolicyConfig& config, CostMode cost_mode);

}  // namespace varpol
