#include "varpol/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "varpol/errors.hpp"

namespace varpol::optim {

namespace {

double diameter(const std::vector<std::vector<double>>& xs) {
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      double s = 0;
      for (std::size_t k = 0; k < xs[i].size(); ++k) {
        const double t = xs[i][k] - xs[j][k];
        s += t * t;
      }
      d = std::max(d, s);
    }
  return std::sqrt(d);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& steps,
                             double diameter_tol, int max_evaluations) {
  const std::size_t n = x0.size();
  if (steps.size() != n) raise(Errc::invalid_value, "nelder_mead: steps size mismatch");

  std::vector<std::vector<double>> x(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += steps[i];

  NelderMeadResult res;
  std::vector<double> fx(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    fx[i] = f(x[i]);
    ++res.evaluations;
  }

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (res.evaluations < max_evaluations) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });

    if (diameter(x) < diameter_tol) {
      res.converged = true;
      break;
    }

    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += x[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + (centroid[k] - x[worst][k]);
    const double fr = f(xr);
    ++res.evaluations;

    if (fr < fx[best]) {
      for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + 2.0 * (xr[k] - centroid[k]);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        x[worst] = xe;
        fx[worst] = fe;
      } else {
        x[worst] = xr;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[second]) {
      x[worst] = xr;
      fx[worst] = fr;
      continue;
    }

    const bool outside = fr < fx[worst];
    const auto& base = outside ? xr : x[worst];
    for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] + 0.5 * (base[k] - centroid[k]);
    const double fc = f(xc);
    ++res.evaluations;
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = xc;
      fx[worst] = fc;
      continue;
    }

    // shrink toward the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) x[i][k] = x[best][k] + 0.5 * (x[i][k] - x[best][k]);
      fx[i] = f(x[i]);
      ++res.evaluations;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fx[i] < fx[best]) best = i;
  res.x = x[best];
  res.fx = fx[best];
  return res;
}

}  // namespace varpol::optim
