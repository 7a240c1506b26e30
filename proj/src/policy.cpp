#include "varpol/policy.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "varpol/errors.hpp"

namespace varpol {

namespace {

constexpr double kCoverageTol = 5e-10;
constexpr int kMonotoneSamples = 11;

void check_config(const PolicyConfig& c) {
  if (!(c.quantile_level > 0 && c.quantile_level < 1))
    raise(Errc::invalid_value, "quantile_level must lie in (0,1)");
  if (!(c.confidence > 0 && c.confidence < 1))
    raise(Errc::invalid_value, "confidence must lie in (0,1)");
  if (!(c.wealth_scale > 0)) raise(Errc::invalid_value, "wealth_scale must be > 0");
  if (!(c.txn_rate >= 0 && c.txn_rate < 1)) raise(Errc::invalid_value, "txn_rate must lie in [0,1)");
  if (!(c.terminal_pi > 0 && c.terminal_pi <= c.wealth_scale))
    raise(Errc::invalid_value, "terminal_pi must lie in (0, wealth_scale]");
  if (c.horizon < 1) raise(Errc::invalid_value, "horizon must be >= 1");
}

double coverage_from_thresholds(const DistModel& model, double k_prev, double k_cur,
                                DenomConvention conv, double f_zero) {
  const double f_cur = cdf(model, k_cur);
  const double f_prev = cdf(model, k_prev);
  const double num = f_cur - f_prev;
  if (num <= 0) return 0.0;
  const double f_denom = conv == DenomConvention::survival_cur ? f_cur : f_prev;
  const double denom = 1.0 - (f_denom - f_zero);
  if (denom <= 1e-300) return 1.0;
  return std::min(1.0, num / denom);
}

// Bisection for coverage(pi) == confidence over (eps M, M], after a
// monotonicity scan across log-spaced sample points.
StepResult solve_binding(const std::function<double(double)>& coverage, const PolicyConfig& cfg) {
  const double m = cfg.wealth_scale;
  const double lo = 1e-9 * m;
  const double hi = m;
  const double conf = cfg.confidence;

  double xs[kMonotoneSamples];
  double cs[kMonotoneSamples];
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  for (int i = 0; i < kMonotoneSamples; ++i) {
    xs[i] = std::exp(log_lo + (log_hi - log_lo) * i / (kMonotoneSamples - 1));
    cs[i] = coverage(xs[i]);
  }
  xs[kMonotoneSamples - 1] = hi;

  bool non_decreasing = true, non_increasing = true;
  for (int i = 1; i < kMonotoneSamples; ++i) {
    if (cs[i] < cs[i - 1] - 1e-9) non_decreasing = false;
    if (cs[i] > cs[i - 1] + 1e-9) non_increasing = false;
  }
  if (!non_decreasing && !non_increasing)
    raise(Errc::non_monotone, "coverage is not monotone across the allocation bracket");

  const double c_lo = cs[0];
  const double c_hi = cs[kMonotoneSamples - 1];
  if (std::isnan(c_lo) || std::isnan(c_hi))
    raise(Errc::no_root, "coverage evaluation produced NaN");

  const int side = c_hi > c_lo ? +1 : (c_hi < c_lo ? -1 : 0);

  StepResult res;
  res.side = side;
  const double c_max = std::max(c_lo, c_hi);
  const double c_min = std::min(c_lo, c_hi);
  if (c_max < conf) {
    // confidence unreachable: clamp to the end with the highest coverage
    res.pi = c_lo >= c_hi ? lo : hi;
    res.feasible = false;
    return res;
  }
  if (c_min > conf) {
    // constraint slack everywhere: clamp to the end nearest the level
    res.pi = c_lo <= c_hi ? lo : hi;
    res.feasible = true;
    return res;
  }

  double a = lo, b = hi;
  double ca = c_lo - conf;
  double mid = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (a + b);
    const double cm = coverage(mid) - conf;
    if (std::fabs(cm) <= kCoverageTol) break;
    if ((cm > 0) == (ca > 0)) {
      a = mid;
      ca = cm;
    } else {
      b = mid;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b)))
      break;
  }
  res.pi = mid;
  res.feasible = true;
  return res;
}

}  // namespace

DenomConvention resolve_convention(const PolicyConfig& config, const DistModel& model) {
  if (config.denominator_convention) return *config.denominator_convention;
  return std::holds_alternative<KdeModel>(model) ? DenomConvention::survival_prev
                                                 : DenomConvention::survival_cur;
}

double var_threshold(double pi, const PolicyConfig& config, double q) {
  if (!(pi > 0)) raise(Errc::zero_allocation, "allocation must be > 0");
  return (q + config.rate * (pi - config.wealth_scale)) / pi;
}

double cost_adjusted_threshold(double pi, double pi_adjacent, const PolicyConfig& config,
                               double q) {
  if (!(pi > 0)) raise(Errc::zero_allocation, "allocation must be > 0");
  return (q + config.rate * (pi - config.wealth_scale) + config.txn_rate * (pi - pi_adjacent)) / pi;
}

double coverage_prob(const DistModel& model, double pi_prev, double pi_cur,
                     const PolicyConfig& config, double q) {
  const double k_prev = var_threshold(pi_prev, config, q);
  const double k_cur = var_threshold(pi_cur, config, q);
  return coverage_from_thresholds(model, k_prev, k_cur, resolve_convention(config, model),
                                  cdf(model, 0.0));
}

double coverage_prob_with_cost(const DistModel& model, double pi_prev, double pi_cur,
                               double pi_next, const PolicyConfig& config, double q) {
  const double k_prev = cost_adjusted_threshold(pi_prev, pi_cur, config, q);
  const double k_cur = cost_adjusted_threshold(pi_cur, pi_next, config, q);
  return coverage_from_thresholds(model, k_prev, k_cur, resolve_convention(config, model),
                                  cdf(model, 0.0));
}

StepResult solve_step_no_cost(const DistModel& model, double pi_cur, const PolicyConfig& config,
                              double q) {
  check_config(config);
  if (!(pi_cur > 0 && pi_cur <= config.wealth_scale))
    raise(Errc::out_of_range, "pi_cur must lie in (0, wealth_scale]");
  const DenomConvention conv = resolve_convention(config, model);
  const double f_zero = cdf(model, 0.0);
  const double k_cur = var_threshold(pi_cur, config, q);
  auto cov = [&](double pi_prev) {
    return coverage_from_thresholds(model, var_threshold(pi_prev, config, q), k_cur, conv, f_zero);
  };
  return solve_binding(cov, config);
}

StepResult solve_step_with_cost(const DistModel& model, double pi_cur, double pi_next,
                                const PolicyConfig& config, double q) {
  check_config(config);
  if (!(pi_cur > 0 && pi_cur <= config.wealth_scale) ||
      !(pi_next > 0 && pi_next <= config.wealth_scale))
    raise(Errc::out_of_range, "allocations must lie in (0, wealth_scale]");
  const DenomConvention conv = resolve_convention(config, model);
  const double f_zero = cdf(model, 0.0);
  const double k_cur = cost_adjusted_threshold(pi_cur, pi_next, config, q);
  auto cov = [&](double pi_prev) {
    return coverage_from_thresholds(model, cost_adjusted_threshold(pi_prev, pi_cur, config, q),
                                    k_cur, conv, f_zero);
  };
  return solve_binding(cov, config);
}

PolicyPath backward_path(const DistModel& model, const PolicyConfig& config, CostMode cost_mode) {
  check_config(config);
  PolicyPath path;
  path.config = config;
  path.cost_mode = cost_mode;
  path.quantile_value = quantile(model, config.quantile_level);
  const std::size_t h = config.horizon;
  path.pis.assign(h, config.terminal_pi);
  path.steps.assign(h, StepResult{config.terminal_pi, true, 0});

  if (cost_mode == CostMode::no_cost) {
    for (std::size_t k = h; k-- > 1;) {
      const StepResult step =
          solve_step_no_cost(model, path.pis[k], config, path.quantile_value);
      path.pis[k - 1] = step.pi;
      path.steps[k - 1] = step;
    }
  } else {
    // second-order chain; the two most recent entries stay at terminal_pi
    for (std::size_t k = h; k-- > 2;) {
      const StepResult step = solve_step_with_cost(model, path.pis[k - 1], path.pis[k], config,
                                                   path.quantile_value);
      path.pis[k - 2] = step.pi;
      path.steps[k - 2] = step;
    }
  }
  return path;
}

}  // namespace varpol
