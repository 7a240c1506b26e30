#include "varpol/gof.hpp"

#include <algorithm>
#include <cmath>

#include "varpol/errors.hpp"

namespace varpol {

double ecdf_eval(const std::vector<double>& sample, double x) {
  if (sample.empty()) raise(Errc::empty_sample, "ecdf_eval on empty sample");
  const auto count = std::count_if(sample.begin(), sample.end(), [&](double v) { return v <= x; });
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf_fn) {
  if (sample.empty()) raise(Errc::empty_sample, "ks_distance on empty sample");
  std::vector<double> sorted(sample);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> f(sorted.size());
#pragma omp parallel for schedule(static) if (sorted.size() >= 64)
  for (long long i = 0; i < static_cast<long long>(sorted.size()); ++i)
    f[static_cast<std::size_t>(i)] = cdf_fn(sorted[static_cast<std::size_t>(i)]);
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double up = (static_cast<double>(i) + 1.0) / n - f[i];
    const double down = f[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(up, down));
  }
  return d;
}

KsResult ks_statistic(const std::vector<double>& sample, const DistModel& model, double level) {
  KsResult res;
  res.d_stat = ks_distance(sample, [&](double x) { return cdf(model, x); });
  res.n = sample.size();
  res.level = level;
  res.critical = ks_critical(sample.size(), level);
  res.reject = res.d_stat > res.critical;
  return res;
}

double ks_critical(std::size_t n, double level) {
  if (n < 1) raise(Errc::empty_sample, "ks_critical needs n >= 1");
  double c = 0;
  if (level == 0.10) c = 1.224;
  else if (level == 0.05) c = 1.358;
  else if (level == 0.01) c = 1.628;
  else raise(Errc::unsupported_level, "ks_critical supports levels 0.10, 0.05, 0.01");
  return c / std::sqrt(static_cast<double>(n));
}

std::vector<ComparisonRow> compare_models(
    const std::vector<double>& sample,
    const std::vector<std::pair<std::string, DistModel>>& models, double level) {
  if (models.empty()) raise(Errc::invalid_value, "compare_models needs at least one model");
  std::vector<ComparisonRow> rows;
  rows.reserve(models.size());
  for (const auto& [name, model] : models) {
    ComparisonRow row;
    row.family = name;
    row.n_params = parameter_count(model);
    row.ks = ks_statistic(sample, model, level);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) { return a.ks.d_stat < b.ks.d_stat; });
  return rows;
}

}  // namespace varpol
