#include "varpol/kernels.hpp"

#include <cmath>
#include <numbers>

namespace varpol::kernels {

namespace {
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
}

double kde_pdf_at(std::span<const double> samples, double bandwidth, double x) {
  const std::size_t n = samples.size();
  const double inv_h = 1.0 / bandwidth;
  const double s = blocked_sum(n, [&](std::size_t i) {
    const double t = (x - samples[i]) * inv_h;
    return std::exp(-0.5 * t * t);
  });
  return s * kInvSqrt2Pi * inv_h / static_cast<double>(n);
}

void kde_pdf_batch(std::span<const double> samples, double bandwidth,
                   std::span<const double> xs, std::span<double> out) {
  const long long m = static_cast<long long>(xs.size());
  const std::size_t n = samples.size();
  const double inv_h = 1.0 / bandwidth;
  const double norm = kInvSqrt2Pi * inv_h / static_cast<double>(n);
#pragma omp parallel for schedule(static) if (xs.size() * n >= 1u << 15)
  for (long long j = 0; j < m; ++j) {
    double acc = 0;
    const double x = xs[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (x - samples[i]) * inv_h;
      acc += std::exp(-0.5 * t * t);
    }
    out[static_cast<std::size_t>(j)] = acc * norm;
  }
}

namespace reference {

double kde_pdf_at(std::span<const double> samples, double bandwidth, double x) {
  const double inv_h = 1.0 / bandwidth;
  double acc = 0;
  for (double s : samples) {
    const double t = (x - s) * inv_h;
    acc += std::exp(-0.5 * t * t);
  }
  return acc * kInvSqrt2Pi * inv_h / static_cast<double>(samples.size());
}

void kde_pdf_batch(std::span<const double> samples, double bandwidth,
                   std::span<const double> xs, std::span<double> out) {
  for (std::size_t j = 0; j < xs.size(); ++j) out[j] = kde_pdf_at(samples, bandwidth, xs[j]);
}

}  // namespace reference

}  // namespace varpol::kernels
