#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varpol/dists.hpp"

namespace varpol {

struct FitReport {
  DistModel model;
  std::map<std::string, double> std_errors;  // only where a closed formula exists
  std::size_t n = 0;
  double log_likelihood = 0;
};

/// How returns are mapped onto a positive-support fitting sample.
enum class SampleTransform {
  positive_only,   // keep strictly positive returns (default)
  absolute_value,  // |r|, zeros dropped
  shifted,         // gross returns 1 + r
};

std::vector<double> transform_sample(const std::vector<double>& returns, SampleTransform t);

/// Pareto Type I: scale = sample minimum, shape = n / sum log(x_i / scale),
/// std error shape / sqrt(n).
FitReport fit_pareto(const std::vector<double>& x);

/// Shape solves the implicit first-order condition by bracketed root-finding
/// (residual below 1e-10); scale from its closed form given the shape.
FitReport fit_weibull(const std::vector<double>& x);

/// Closed-form weighted estimates; unit weights when none are given.
FitReport fit_invgauss(const std::vector<double>& x, const std::vector<double>& weights = {});

/// Two-component common-sigma EM; deterministic percentile initialization,
/// converged when the log-likelihood gain drops below 1e-8 (max 500 rounds).
/// Components are ordered so mu1 <= mu2.
FitReport fit_mixture_normal(const std::vector<double>& x);

/// Nelder-Mead on (location, log spread, asymmetry, log shape); stops at
/// simplex diameter 1e-9 or errors after 5000 evaluations.
FitReport fit_variance_gamma(const std::vector<double>& x);

/// Bandwidth as given, otherwise Silverman's 0.9 min(sd, IQR/1.34) n^(-1/5).
KdeModel fit_kde(const std::vector<double>& x, std::optional<double> bandwidth = std::nullopt);

double weibull_scale_for_shape(const std::vector<double>& x, double shape);
double weibull_shape_residual(const std::vector<double>& x, double shape);
double silverman_bandwidth(const std::vector<double>& x);

/// Linear-interpolation sample quantile (R type 7).
double sample_quantile(std::vector<double> x, double p);

}  // namespace varpol
