#pragma once

#include <functional>
#include <vector>

namespace varpol::optim {

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Downhill simplex with standard coefficients (reflect 1, expand 2,
/// contract 0.5, shrink 0.5). Deterministic: the initial simplex is x0 plus
/// one step along each coordinate. Converges when the simplex diameter
/// (max vertex distance) drops below diameter_tol.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& steps,
                             double diameter_tol, int max_evaluations);

}  // namespace varpol::optim
