#include "wb/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace wb::kernels {

namespace {

// Deterministic blocked reduction: partial sums over fixed-size blocks are
// accumulated in index order, so the result does not depend on how the blocks
// were distributed over threads.
template <class BlockOp>
double blocked_reduce(std::size_t n, BlockOp op) {
  const std::size_t nblocks = (n + reduce_block - 1) / reduce_block;
  if (nblocks <= 1) return op(0, n);
  std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
    const std::size_t hi = std::min(lo + reduce_block, n);
    partial[static_cast<std::size_t>(b)] = op(lo, hi);
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

} // namespace

namespace serial {

// Same block boundaries as the parallel path, so the two agree bitwise.
double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t lo = 0; lo < n; lo += reduce_block) {
    const std::size_t hi = std::min(lo + reduce_block, n);
    double block = 0.0;
    for (std::size_t i = lo; i < hi; ++i) block += a[i] * b[i];
    acc += block;
  }
  return acc;
}

double sum(std::span<const double> a) {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t lo = 0; lo < n; lo += reduce_block) {
    const std::size_t hi = std::min(lo + reduce_block, n);
    double block = 0.0;
    for (std::size_t i = lo; i < hi; ++i) block += a[i];
    acc += block;
  }
  return acc;
}

double sum_sq(std::span<const double> a) { return dot(a, a); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void axpby(double alpha, std::span<const double> a, double beta,
           std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = alpha * a[i] + beta * b[i];
}

void rk4_combine(std::span<const double> y, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out) {
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void scale_complex(std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> m,
                   std::span<std::complex<double>> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * m[i];
}

} // namespace serial

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double sum(std::span<const double> a) {
  return blocked_reduce(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    return s;
  });
}

double sum_sq(std::span<const double> a) { return dot(a, a); }

double max_abs(std::span<const double> a) {
  const std::size_t n = a.size();
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) \
    if (n >= parallel_grain)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)]));
  return m;
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] =
        a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
}

void axpby(double alpha, std::span<const double> a, double beta,
           std::span<const double> b, std::span<double> out) {
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[j] = alpha * a[j] + beta * b[j];
  }
}

void rk4_combine(std::span<const double> y, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out) {
  const double w = dt / 6.0;
  const std::size_t n = y.size();
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[j] = y[j] + w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
}

void scale_complex(std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> m,
                   std::span<std::complex<double>> out) {
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (n >= parallel_grain)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[j] = a[j] * m[j];
  }
}

bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

} // namespace wb::kernels
