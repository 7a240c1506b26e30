#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "varpol/dists.hpp"

namespace varpol {

struct KsResult {
  double d_stat = 0;
  std::size_t n = 0;
  double critical = 0;
  double level = 0.05;
  bool reject = false;  // d_stat > critical
};

/// Fraction of the sample at or below x.
double ecdf_eval(const std::vector<double>& sample, double x);

/// Exact two-sided sup distance between the sample ECDF and cdf_fn,
/// evaluated at the jump points.
double ks_distance(const std::vector<double>& sample, const std::function<double(double)>& cdf_fn);

KsResult ks_statistic(const std::vector<double>& sample, const DistModel& model,
                      double level = 0.05);

/// Asymptotic critical value c(level)/sqrt(n); levels 0.10, 0.05, 0.01.
double ks_critical(std::size_t n, double level);

struct ComparisonRow {
  std::string family;
  int n_params = 0;
  KsResult ks;
};

/// One KS row per model, sorted by D ascending.
std::vector<ComparisonRow> compare_models(
    const std::vector<double>& sample,
    const std::vector<std::pair<std::string, DistModel>>& models, double level = 0.05);

}  // namespace varpol
