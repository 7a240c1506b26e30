#include "varpol/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "varpol/errors.hpp"
#include "varpol/kernels.hpp"
#include "varpol/optim.hpp"
#include "varpol/roots.hpp"

namespace varpol {

namespace {

void require_positive(const std::vector<double>& x) {
  for (double v : x)
    if (!(v > 0)) raise(Errc::non_positive_sample, "sample values must be strictly positive");
}

bool all_equal(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double mean(const std::vector<double>& x) {
  return kernels::blocked_sum(x.size(), [&](std::size_t i) { return x[i]; }) /
         static_cast<double>(x.size());
}

double sample_sd(const std::vector<double>& x) {
  const double m = mean(x);
  const double ss = kernels::blocked_sum(x.size(), [&](std::size_t i) {
    const double d = x[i] - m;
    return d * d;
  });
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double model_log_likelihood(const DistModel& model, const std::vector<double>& x) {
  return kernels::blocked_sum(x.size(), [&](std::size_t i) { return log_pdf(model, x[i]); });
}

}  // namespace

std::vector<double> transform_sample(const std::vector<double>& returns, SampleTransform t) {
  std::vector<double> out;
  out.reserve(returns.size());
  switch (t) {
    case SampleTransform::positive_only:
      for (double r : returns)
        if (r > 0) out.push_back(r);
      break;
    case SampleTransform::absolute_value:
      for (double r : returns)
        if (r != 0) out.push_back(std::fabs(r));
      break;
    case SampleTransform::shifted:
      for (double r : returns) out.push_back(1.0 + r);
      break;
  }
  return out;
}

double sample_quantile(std::vector<double> x, double p) {
  if (x.empty()) raise(Errc::empty_sample, "sample_quantile on empty sample");
  if (!(p >= 0 && p <= 1)) raise(Errc::out_of_range, "sample_quantile level outside [0,1]");
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

FitReport fit_pareto(const std::vector<double>& x) {
  if (x.size() < 2) raise(Errc::too_few_samples, "fit_pareto needs n >= 2");
  require_positive(x);
  const double scale = *std::min_element(x.begin(), x.end());
  const double sum_log =
      kernels::blocked_sum(x.size(), [&](std::size_t i) { return std::log(x[i]) - std::log(scale); });
  if (!(sum_log > 0)) raise(Errc::degenerate_sample, "fit_pareto: all sample values equal");
  const double n = static_cast<double>(x.size());
  const double shape = n / sum_log;

  FitReport rep;
  rep.model = ParetoParams{scale, shape, ParetoForm::type1};
  rep.std_errors["shape"] = shape / std::sqrt(n);
  rep.n = x.size();
  rep.log_likelihood = model_log_likelihood(rep.model, x);
  return rep;
}

double weibull_shape_residual(const std::vector<double>& x, double shape) {
  // sum x^a ln x / sum x^a - 1/a - mean(ln x), computed with a shifted
  // exponential so large shapes do not overflow.
  const std::size_t n = x.size();
  double max_log = -std::numeric_limits<double>::infinity();
  for (double v : x) max_log = std::max(max_log, std::log(v));
  double sw = 0, swl = 0, sl = 0;
  for (double v : x) {
    const double lv = std::log(v);
    const double w = std::exp(shape * (lv - max_log));
    sw += w;
    swl += w * lv;
    sl += lv;
  }
  return swl / sw - 1.0 / shape - sl / static_cast<double>(n);
}

double weibull_scale_for_shape(const std::vector<double>& x, double shape) {
  double max_log = -std::numeric_limits<double>::infinity();
  for (double v : x) max_log = std::max(max_log, std::log(v));
  double sw = 0;
  for (double v : x) sw += std::exp(shape * (std::log(v) - max_log));
  const double log_mean_pow = max_log * shape + std::log(sw / static_cast<double>(x.size()));
  return std::exp(log_mean_pow / shape);
}

FitReport fit_weibull(const std::vector<double>& x) {
  if (x.size() < 2) raise(Errc::too_few_samples, "fit_weibull needs n >= 2");
  require_positive(x);
  if (all_equal(x)) raise(Errc::degenerate_sample, "fit_weibull: all sample values equal");

  auto g = [&](double a) { return weibull_shape_residual(x, a); };
  auto br = roots::expand_bracket(g, 1e-4, 100.0, 1e-8, 1e8);
  double shape = roots::brent(g, br.lo, br.hi, br.f_lo, br.f_hi, 1e-15);
  if (std::fabs(g(shape)) > 1e-10)
    raise(Errc::root_not_bracketed, "fit_weibull: residual tolerance not reached");
  const double scale = weibull_scale_for_shape(x, shape);

  FitReport rep;
  rep.model = WeibullParams{scale, shape};
  rep.n = x.size();
  rep.log_likelihood = model_log_likelihood(rep.model, x);
  return rep;
}

FitReport fit_invgauss(const std::vector<double>& x, const std::vector<double>& weights) {
  if (x.size() < 2) raise(Errc::too_few_samples, "fit_invgauss needs n >= 2");
  require_positive(x);
  std::vector<double> w = weights;
  if (w.empty()) w.assign(x.size(), 1.0);
  if (w.size() != x.size()) raise(Errc::length_mismatch, "fit_invgauss: weights size mismatch");
  for (double v : w)
    if (!(v > 0)) raise(Errc::invalid_value, "fit_invgauss: weights must be > 0");

  const double sum_w = std::accumulate(w.begin(), w.end(), 0.0);
  double sum_wx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum_wx += w[i] * x[i];
  const double mu = sum_wx / sum_w;

  double disp = 0;
  for (std::size_t i = 0; i < x.size(); ++i) disp += w[i] * (1.0 / x[i] - 1.0 / mu);
  disp /= static_cast<double>(x.size());
  if (!(disp > 0)) raise(Errc::degenerate_sample, "fit_invgauss: zero dispersion");

  FitReport rep;
  rep.model = InverseGaussianParams{mu, 1.0 / disp};
  rep.n = x.size();
  rep.log_likelihood = model_log_likelihood(rep.model, x);
  return rep;
}

FitReport fit_mixture_normal(const std::vector<double>& x) {
  if (x.size() < 10) raise(Errc::too_few_samples, "fit_mixture_normal needs n >= 10");
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);

  double mu1 = sample_quantile(x, 0.25);
  double mu2 = sample_quantile(x, 0.75);
  double sigma = sample_sd(x);
  if (!(sigma > 0)) raise(Errc::degenerate_sample, "fit_mixture_normal: zero spread");
  double mix = 0.5;
  const double sigma_floor = 1e-10 * (std::fabs(mu1) + std::fabs(mu2) + sigma + 1e-300);

  auto loglik = [&](double m1, double m2, double s, double p) {
    return kernels::blocked_sum(n, [&](std::size_t i) {
      const double z1 = (x[i] - m1) / s;
      const double z2 = (x[i] - m2) / s;
      const double l1 = -0.5 * z1 * z1;
      const double l2 = -0.5 * z2 * z2;
      const double hi = std::max(l1, l2);
      const double v = p * std::exp(l1 - hi) + (1.0 - p) * std::exp(l2 - hi);
      return hi + std::log(v) - std::log(s) - 0.9189385332046727;  // ln sqrt(2 pi)
    });
  };

  double prev_ll = loglik(mu1, mu2, sigma, mix);
  std::vector<double> gamma(n);
  bool converged = false;
  for (int iter = 0; iter < 500; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const double z1 = (x[i] - mu1) / sigma;
      const double z2 = (x[i] - mu2) / sigma;
      const double a = std::log(mix) - 0.5 * z1 * z1;
      const double b = std::log(1.0 - mix) - 0.5 * z2 * z2;
      gamma[i] = 1.0 / (1.0 + std::exp(b - a));
    }
    double g_sum = 0, gx1 = 0, gx2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      g_sum += gamma[i];
      gx1 += gamma[i] * x[i];
      gx2 += (1.0 - gamma[i]) * x[i];
    }
    const double g2_sum = nd - g_sum;
    if (g_sum < 1e-12 || g2_sum < 1e-12)
      raise(Errc::degenerate_sample, "fit_mixture_normal: one component collapsed");
    mu1 = gx1 / g_sum;
    mu2 = gx2 / g2_sum;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = x[i] - mu1;
      const double d2 = x[i] - mu2;
      ss += gamma[i] * d1 * d1 + (1.0 - gamma[i]) * d2 * d2;
    }
    sigma = std::max(std::sqrt(ss / nd), sigma_floor);
    mix = std::min(1.0 - 1e-12, std::max(1e-12, g_sum / nd));

    const double ll = loglik(mu1, mu2, sigma, mix);
    if (std::fabs(ll - prev_ll) < 1e-8) {
      prev_ll = ll;
      converged = true;
      break;
    }
    prev_ll = ll;
  }
  if (!converged) raise(Errc::em_not_converged, "fit_mixture_normal: 500 iterations exhausted");

  if (mu1 > mu2) {
    std::swap(mu1, mu2);
    mix = 1.0 - mix;
  }

  FitReport rep;
  rep.model = MixtureNormalParams{mu1, mu2, sigma, mix};
  rep.n = n;
  rep.log_likelihood = prev_ll;
  return rep;
}

FitReport fit_variance_gamma(const std::vector<double>& x) {
  if (x.size() < 10) raise(Errc::too_few_samples, "fit_variance_gamma needs n >= 10");
  const double med = sample_quantile(x, 0.5);
  const double sd = sample_sd(x);
  if (!(sd > 0)) raise(Errc::degenerate_sample, "fit_variance_gamma: zero spread");

  auto unpack = [](const std::vector<double>& u) {
    return VarianceGammaParams{u[0], std::exp(u[1]), u[2], std::exp(u[3])};
  };
  auto nll = [&](const std::vector<double>& u) {
    const DistModel m{unpack(u)};
    return -kernels::blocked_sum(x.size(), [&](std::size_t i) { return log_pdf(m, x[i]); });
  };

  const std::vector<double> u0{med, std::log(sd), 0.0, 0.0};
  const std::vector<double> steps{0.25 * sd, 0.25, 0.25 * sd, 0.4};
  const auto res = optim::nelder_mead(nll, u0, steps, 1e-9, 5000);
  if (!res.converged)
    raise(Errc::optimizer_stalled, "fit_variance_gamma: 5000 evaluations exhausted");

  FitReport rep;
  rep.model = unpack(res.x);
  rep.n = x.size();
  rep.log_likelihood = -res.fx;
  return rep;
}

double silverman_bandwidth(const std::vector<double>& x) {
  const double sd = sample_sd(x);
  const double iqr = sample_quantile(x, 0.75) - sample_quantile(x, 0.25);
  double scale = std::min(sd, iqr / 1.34);
  if (!(scale > 0)) scale = std::max(sd, iqr / 1.34);
  if (!(scale > 0)) raise(Errc::degenerate_sample, "silverman_bandwidth: zero spread sample");
  return 0.9 * scale * std::pow(static_cast<double>(x.size()), -0.2);
}

KdeModel fit_kde(const std::vector<double>& x, std::optional<double> bandwidth) {
  if (x.size() < 2) raise(Errc::too_few_samples, "fit_kde needs n >= 2");
  if (bandwidth && !(*bandwidth > 0)) raise(Errc::invalid_value, "fit_kde: bandwidth must be > 0");
  KdeModel model;
  model.samples = x;
  std::sort(model.samples.begin(), model.samples.end());
  model.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(x);
  return model;
}

}  // namespace varpol
