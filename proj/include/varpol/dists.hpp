#pragma once

#include <string>
#include <variant>
#include <vector>

namespace varpol {

enum class ParetoForm { type1, lomax };

/// Pareto scale/shape pair. The Type I form lives on x >= scale; the Lomax
/// (shifted) form lives on x >= 0 with density a*l^a / (x + l)^(a+1).
struct ParetoParams {
  double scale = 1;
  double shape = 1;
  ParetoForm form = ParetoForm::type1;
};

struct WeibullParams {
  double scale = 1;
  double shape = 1;
};

struct InverseGaussianParams {
  double mean = 1;
  double shape = 1;
};

/// Two-component normal mixture with a common spread.
struct MixtureNormalParams {
  double mu1 = 0;
  double mu2 = 0;
  double sigma = 1;
  double mix = 0.5;  // weight on the mu1 component
};

struct VarianceGammaParams {
  double location = 0;
  double spread = 1;
  double asymmetry = 0;
  double shape = 1;
};

/// Gaussian-kernel density estimate over a stored sample.
struct KdeModel {
  std::vector<double> samples;  // kept sorted
  double bandwidth = 1;
};

using DistModel = std::variant<ParetoParams, WeibullParams, InverseGaussianParams,
                               MixtureNormalParams, VarianceGammaParams, KdeModel>;

std::string family_name(const DistModel& model);
int parameter_count(const DistModel& model);

/// Throws Error(invalid_value) when a parameter violates its invariant.
void validate(const DistModel& model);

double pdf(const DistModel& model, double x);
double log_pdf(const DistModel& model, double x);

/// Nondecreasing, limits 0 and 1. The inverse Gaussian uses the closed
/// Phi-form; the KDE integrates its density from (min sample - 8h).
double cdf(const DistModel& model, double x);

/// Inverse CDF for p in (0, 1); closed form for Weibull and both Pareto
/// forms, bracketed root-finding on the CDF elsewhere.
double quantile(const DistModel& model, double p);

struct MixtureDiagnostics {
  double delta = 0;             // |mu1 - mu2| / sigma
  double bimodality_index = 0;  // delta * sqrt(mix (1 - mix))
};
MixtureDiagnostics mixture_diagnostics(const MixtureNormalParams& params);

/// Lower edge of the support (or of the numerically relevant region).
double support_lower(const DistModel& model);

}  // namespace varpol
