#include "varpol/dists.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "varpol/errors.hpp"
#include "varpol/kernels.hpp"
#include "varpol/quadrature.hpp"
#include "varpol/roots.hpp"
#include "varpol/special.hpp"

namespace varpol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// ---- Pareto ----------------------------------------------------------------

double pareto_log_pdf(const ParetoParams& p, double x) {
  if (p.form == ParetoForm::type1) {
    if (x < p.scale) return -kInf;
    return std::log(p.shape) - std::log(x) - p.shape * std::log(x / p.scale);
  }
  if (x < 0) return -kInf;
  return std::log(p.shape) - std::log(x + p.scale) - p.shape * std::log1p(x / p.scale);
}

double pareto_cdf(const ParetoParams& p, double x) {
  if (p.form == ParetoForm::type1) {
    if (x <= p.scale) return 0.0;
    return -std::expm1(-p.shape * std::log1p((x - p.scale) / p.scale));
  }
  if (x <= 0) return 0.0;
  return -std::expm1(-p.shape * std::log1p(x / p.scale));
}

double pareto_quantile(const ParetoParams& p, double q) {
  // Type I: scale * (1-q)^(-1/shape); Lomax: scale * ((1-q)^(-1/shape) - 1)
  const double t = -std::log1p(-q) / p.shape;
  return p.form == ParetoForm::type1 ? p.scale * std::exp(t) : p.scale * std::expm1(t);
}

// ---- Weibull ---------------------------------------------------------------

double weibull_log_pdf(const WeibullParams& p, double x) {
  if (x < 0) return -kInf;
  if (x == 0) return p.shape < 1 ? kInf : (p.shape == 1 ? -std::log(p.scale) : -kInf);
  const double z = x / p.scale;
  return std::log(p.shape / p.scale) + (p.shape - 1) * std::log(z) - std::pow(z, p.shape);
}

double weibull_cdf(const WeibullParams& p, double x) {
  if (x <= 0) return 0.0;
  return -std::expm1(-std::pow(x / p.scale, p.shape));
}

double weibull_quantile(const WeibullParams& p, double q) {
  return p.scale * std::pow(-std::log1p(-q), 1.0 / p.shape);
}

// ---- Inverse Gaussian -------------------------------------------------------

double invgauss_log_pdf(const InverseGaussianParams& p, double x) {
  if (x <= 0) return -kInf;
  const double d = x - p.mean;
  return 0.5 * (std::log(p.shape) - kLog2Pi - 3.0 * std::log(x)) -
         p.shape * d * d / (2.0 * p.mean * p.mean * x);
}

double invgauss_cdf(const InverseGaussianParams& p, double x) {
  if (x <= 0) return 0.0;
  const double y = std::sqrt(p.shape / x);
  const double g = x / p.mean;
  const double term1 = special::norm_cdf(y * (g - 1.0));
  const double log_term2 = 2.0 * p.shape / p.mean + special::log_norm_cdf(-y * (g + 1.0));
  return clamp01(term1 + std::exp(log_term2));
}

// ---- Mixture normal ---------------------------------------------------------

double mixnormal_pdf(const MixtureNormalParams& p, double x) {
  const double z1 = (x - p.mu1) / p.sigma;
  const double z2 = (x - p.mu2) / p.sigma;
  return (p.mix * special::norm_pdf(z1) + (1.0 - p.mix) * special::norm_pdf(z2)) / p.sigma;
}

double mixnormal_cdf(const MixtureNormalParams& p, double x) {
  return clamp01(p.mix * special::norm_cdf((x - p.mu1) / p.sigma) +
                 (1.0 - p.mix) * special::norm_cdf((x - p.mu2) / p.sigma));
}

// ---- Variance gamma ---------------------------------------------------------

struct VgConstants {
  double m = 0;         // sqrt(2 sigma^2 / nu + theta^2)
  double order = 0;     // 1/nu - 1/2
  double log_norm = 0;  // log of the x-independent factor
};

VgConstants vg_constants(const VarianceGammaParams& p) {
  VgConstants c;
  c.m = std::sqrt(2.0 * p.spread * p.spread / p.shape + p.asymmetry * p.asymmetry);
  c.order = 1.0 / p.shape - 0.5;
  c.log_norm = std::numbers::ln2 - std::log(p.spread) - 0.5 * kLog2Pi -
               std::log(p.shape) / p.shape - std::lgamma(1.0 / p.shape);
  return c;
}

double vg_log_pdf(const VarianceGammaParams& p, double x) {
  const VgConstants c = vg_constants(p);
  const double s2 = p.spread * p.spread;
  // Integrable singularity at the center for nu > 2; step off it.
  const double eps = 1e-12 * (p.spread + std::fabs(p.asymmetry) + 1e-300);
  const double u = std::fabs(x - p.location) < eps ? eps : x - p.location;
  const double au = std::fabs(u);
  return c.log_norm + p.asymmetry * u / s2 + c.order * (std::log(au) - std::log(c.m)) +
         special::log_bessel_k(c.order, au * c.m / s2);
}

double vg_left_cut(const VarianceGammaParams& p) {
  const VgConstants c = vg_constants(p);
  const double rate = (c.m + p.asymmetry) / (p.spread * p.spread);
  double cut = 40.0 / rate + 10.0 * p.spread;
  for (int i = 0; i < 60; ++i) {
    if (std::exp(vg_log_pdf(p, p.location - cut)) / rate < 1e-17) break;
    cut *= 1.5;
  }
  return p.location - cut;
}

double vg_right_cut(const VarianceGammaParams& p) {
  const VgConstants c = vg_constants(p);
  const double rate = (c.m - p.asymmetry) / (p.spread * p.spread);
  double cut = 40.0 / rate + 10.0 * p.spread;
  for (int i = 0; i < 60; ++i) {
    if (std::exp(vg_log_pdf(p, p.location + cut)) / rate < 1e-17) break;
    cut *= 1.5;
  }
  return p.location + cut;
}

double vg_cdf(const VarianceGammaParams& p, double x) {
  const double lo = vg_left_cut(p);
  if (x <= lo) return 0.0;
  const double xx = std::min(x, vg_right_cut(p));
  auto density = [&](double u) { return std::exp(vg_log_pdf(p, u)); };
  const double c = p.location;
  double total = 0;
  if (p.shape > 1.0) {
    // For nu > 1 the density has a cusp (nu > 2: an integrable singularity)
    // at the center; substituting u = c +- s^nu cancels it exactly.
    const double nu = p.shape;
    auto mass_from_center = [&](double d, double sign) {
      if (d <= 0) return 0.0;
      const double smax = std::pow(d, 1.0 / nu);
      return quadrature::integrate(
                 [&](double s) {
                   return density(c + sign * std::pow(s, nu)) * nu * std::pow(s, nu - 1.0);
                 },
                 0.0, smax, 1e-13, 1e-11)
          .value;
    };
    if (xx <= c)
      total = mass_from_center(c - lo, -1.0) - mass_from_center(c - xx, -1.0);
    else
      total = mass_from_center(c - lo, -1.0) + mass_from_center(xx - c, +1.0);
  } else {
    total = quadrature::integrate(density, lo, xx, 1e-13, 1e-11).value;
  }
  return clamp01(total);
}

// ---- KDE ---------------------------------------------------------------------

double kde_lower(const KdeModel& k) { return k.samples.front() - 8.0 * k.bandwidth; }
double kde_upper(const KdeModel& k) { return k.samples.back() + 8.0 * k.bandwidth; }

double kde_cdf(const KdeModel& k, double x) {
  const double lo = kde_lower(k);
  if (x <= lo) return 0.0;
  const double hi = std::min(x, kde_upper(k));
  const auto res = quadrature::integrate(
      [&](double t) { return kernels::kde_pdf_at(k.samples, k.bandwidth, t); }, lo, hi, 5e-14,
      1e-12);
  return clamp01(res.value);
}

// ---- generic quantile by root-finding ----------------------------------------

double cdf_root_quantile(const DistModel& model, double p, double lo, double hi) {
  auto g = [&](double x) { return cdf(model, x) - p; };
  auto br = roots::expand_bracket(g, lo, hi, -1e308, 1e308);
  return roots::brent(g, br.lo, br.hi, br.f_lo, br.f_hi, 1e-15);
}

}  // namespace

std::string family_name(const DistModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>) return "pareto";
        if constexpr (std::is_same_v<T, WeibullParams>) return "weibull";
        if constexpr (std::is_same_v<T, InverseGaussianParams>) return "invgauss";
        if constexpr (std::is_same_v<T, MixtureNormalParams>) return "mixnormal";
        if constexpr (std::is_same_v<T, VarianceGammaParams>) return "vargamma";
        if constexpr (std::is_same_v<T, KdeModel>) return "kde";
      },
      model);
}

int parameter_count(const DistModel& model) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MixtureNormalParams>) return 4;
        else if constexpr (std::is_same_v<T, VarianceGammaParams>) return 4;
        else if constexpr (std::is_same_v<T, KdeModel>) return 1;
        else return 2;
      },
      model);
}

void validate(const DistModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>) {
          if (!(m.scale > 0) || !(m.shape > 0)) raise(Errc::invalid_value, "pareto: scale and shape must be > 0");
        } else if constexpr (std::is_same_v<T, WeibullParams>) {
          if (!(m.scale > 0) || !(m.shape > 0)) raise(Errc::invalid_value, "weibull: scale and shape must be > 0");
        } else if constexpr (std::is_same_v<T, InverseGaussianParams>) {
          if (!(m.mean > 0) || !(m.shape > 0)) raise(Errc::invalid_value, "invgauss: mean and shape must be > 0");
        } else if constexpr (std::is_same_v<T, MixtureNormalParams>) {
          if (!(m.sigma > 0)) raise(Errc::invalid_value, "mixnormal: sigma must be > 0");
          if (!(m.mix > 0 && m.mix < 1)) raise(Errc::invalid_value, "mixnormal: mix must lie in (0,1)");
        } else if constexpr (std::is_same_v<T, VarianceGammaParams>) {
          if (!(m.spread > 0) || !(m.shape > 0)) raise(Errc::invalid_value, "vargamma: spread and shape must be > 0");
        } else if constexpr (std::is_same_v<T, KdeModel>) {
          if (!(m.bandwidth > 0)) raise(Errc::invalid_value, "kde: bandwidth must be > 0");
          if (m.samples.empty()) raise(Errc::invalid_value, "kde: needs at least one sample");
          if (!std::is_sorted(m.samples.begin(), m.samples.end()))
            raise(Errc::invalid_value, "kde: samples must be sorted");
        }
      },
      model);
}

double log_pdf(const DistModel& model, double x) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>) return pareto_log_pdf(m, x);
        if constexpr (std::is_same_v<T, WeibullParams>) return weibull_log_pdf(m, x);
        if constexpr (std::is_same_v<T, InverseGaussianParams>) return invgauss_log_pdf(m, x);
        if constexpr (std::is_same_v<T, MixtureNormalParams>) {
          const double v = mixnormal_pdf(m, x);
          return v > 0 ? std::log(v) : -kInf;
        }
        if constexpr (std::is_same_v<T, VarianceGammaParams>) return vg_log_pdf(m, x);
        if constexpr (std::is_same_v<T, KdeModel>) {
          const double v = kernels::kde_pdf_at(m.samples, m.bandwidth, x);
          return v > 0 ? std::log(v) : -kInf;
        }
      },
      model);
}

double pdf(const DistModel& model, double x) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MixtureNormalParams>) return mixnormal_pdf(m, x);
        else if constexpr (std::is_same_v<T, KdeModel>) return kernels::kde_pdf_at(m.samples, m.bandwidth, x);
        else return std::exp(log_pdf(model, x));
      },
      model);
}

double cdf(const DistModel& model, double x) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>) return pareto_cdf(m, x);
        if constexpr (std::is_same_v<T, WeibullParams>) return weibull_cdf(m, x);
        if constexpr (std::is_same_v<T, InverseGaussianParams>) return invgauss_cdf(m, x);
        if constexpr (std::is_same_v<T, MixtureNormalParams>) return mixnormal_cdf(m, x);
        if constexpr (std::is_same_v<T, VarianceGammaParams>) return vg_cdf(m, x);
        if constexpr (std::is_same_v<T, KdeModel>) return kde_cdf(m, x);
      },
      model);
}

double quantile(const DistModel& model, double p) {
  if (!(p > 0.0 && p < 1.0)) raise(Errc::out_of_range, "quantile level must lie in (0, 1)");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>) return pareto_quantile(m, p);
        if constexpr (std::is_same_v<T, WeibullParams>) return weibull_quantile(m, p);
        if constexpr (std::is_same_v<T, InverseGaussianParams>)
          return cdf_root_quantile(model, p, 0.5 * m.mean, 2.0 * m.mean);
        if constexpr (std::is_same_v<T, MixtureNormalParams>) {
          const double lo = std::min(m.mu1, m.mu2) - 2.0 * m.sigma;
          const double hi = std::max(m.mu1, m.mu2) + 2.0 * m.sigma;
          return cdf_root_quantile(model, p, lo, hi);
        }
        if constexpr (std::is_same_v<T, VarianceGammaParams>)
          return cdf_root_quantile(model, p, m.location - m.spread, m.location + m.spread);
        if constexpr (std::is_same_v<T, KdeModel>)
          return cdf_root_quantile(model, p, kde_lower(m), kde_upper(m));
      },
      model);
}

MixtureDiagnostics mixture_diagnostics(const MixtureNormalParams& params) {
  validate(DistModel{params});
  MixtureDiagnostics d;
  d.delta = std::fabs(params.mu1 - params.mu2) / params.sigma;
  d.bimodality_index = d.delta * std::sqrt(params.mix * (1.0 - params.mix));
  return d;
}

double support_lower(const DistModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>)
          return m.form == ParetoForm::type1 ? m.scale : 0.0;
        else if constexpr (std::is_same_v<T, WeibullParams>) return 0.0;
        else if constexpr (std::is_same_v<T, InverseGaussianParams>) return 0.0;
        else if constexpr (std::is_same_v<T, MixtureNormalParams>)
          return std::min(m.mu1, m.mu2) - 40.0 * m.sigma;
        else if constexpr (std::is_same_v<T, VarianceGammaParams>) return vg_left_cut(m);
        else return kde_lower(m);
      },
      model);
}

}  // namespace varpol
