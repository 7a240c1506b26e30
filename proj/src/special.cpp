#include "varpol/special.hpp"

#include <cmath>
#include <numbers>

#include "varpol/errors.hpp"

namespace varpol::special {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // ln(2*pi)
}

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_norm_cdf(double z) {
  if (z > -30.0) return std::log(norm_cdf(z));
  // Asymptotic expansion of Phi(z) = phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - ...)
  const double z2 = z * z;
  const double series =
      1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2) + 105.0 / (z2 * z2 * z2 * z2);
  return -0.5 * z2 - 0.5 * kLog2Pi - std::log(-z) + std::log(series);
}

double bessel_k(double nu, double z) {
  if (!(z > 0.0)) raise(Errc::out_of_range, "bessel_k requires z > 0");
  return std::cyl_bessel_k(std::fabs(nu), z);
}

double log_bessel_k(double nu, double z) {
  if (!(z > 0.0)) raise(Errc::out_of_range, "log_bessel_k requires z > 0");
  nu = std::fabs(nu);
  if (z < 650.0) {
    const double k = std::cyl_bessel_k(nu, z);
    if (k > 0.0 && std::isfinite(k)) return std::log(k);
  }
  // K_nu(z) ~ sqrt(pi/2z) e^-z (1 + a1/z + a2/z^2 + a3/z^3)
  const double mu = 4.0 * nu * nu;
  const double a1 = (mu - 1.0) / 8.0;
  const double a2 = (mu - 1.0) * (mu - 9.0) / 128.0;
  const double a3 = (mu - 1.0) * (mu - 9.0) * (mu - 25.0) / 3072.0;
  const double corr = 1.0 + a1 / z + a2 / (z * z) + a3 / (z * z * z);
  return 0.5 * std::log(std::numbers::pi / (2.0 * z)) - z + std::log(corr);
}

}  // namespace varpol::special
