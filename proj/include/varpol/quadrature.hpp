#pragma once

#include <functional>

namespace varpol::quadrature {

struct Result {
  double value = 0;
  double error = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
/// Throws Error(quadrature_failure) if the tolerance cannot be met
/// within the subdivision budget.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10);

}  // namespace varpol::quadrature
