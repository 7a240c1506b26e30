#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace varpol::kernels {

// Hot inner loops shared by the estimators and the policy solver. Each kernel
// has an OpenMP implementation here and a plain serial twin in
// kernels::reference, kept for correctness tests and benchmarks.
//
// Reductions are deterministic: terms are summed into fixed 1024-element
// blocks and the block partials are combined in block order, so results do
// not depend on the number of threads.

constexpr std::size_t kSumBlock = 1024;
constexpr std::size_t kParallelSumThreshold = 8192;

template <class Term>
double blocked_sum(std::size_t n, Term&& term) {
  if (n < kParallelSumThreshold) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t end = begin + kSumBlock < n ? begin + kSumBlock : n;
    double acc = 0;
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0;
  for (double p : partial) total += p;
  return total;
}

double kde_pdf_at(std::span<const double> samples, double bandwidth, double x);

/// Gaussian-kernel density evaluated at each xs[j]; out.size() == xs.size().
void kde_pdf_batch(std::span<const double> samples, double bandwidth,
                   std::span<const double> xs, std::span<double> out);

namespace reference {

template <class Term>
double sum(std::size_t n, Term&& term) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += term(i);
  return acc;
}

double kde_pdf_at(std::span<const double> samples, double bandwidth, double x);
void kde_pdf_batch(std::span<const double> samples, double bandwidth,
                   std::span<const double> xs, std::span<double> out);

}  // namespace reference

}  // namespace varpol::kernels
