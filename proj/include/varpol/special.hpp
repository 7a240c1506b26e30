#pragma once

namespace varpol::special {

double norm_pdf(double z);

/// Standard normal CDF via the complementary error function.
double norm_cdf(double z);

/// log(norm_cdf(z)), stable far into the left tail.
double log_norm_cdf(double z);

/// Modified Bessel function of the second kind K_nu(z), z > 0.
double bessel_k(double nu, double z);

/// log(K_nu(z)), stable for large z where K underflows.
double log_bessel_k(double nu, double z);

}  // namespace varpol::special
