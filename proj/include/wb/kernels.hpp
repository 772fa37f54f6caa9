#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Array kernels behind every field operation. Each kernel ships in two
// variants: a plain serial loop under kernels::serial, used by the tests as
// the reference, and the OpenMP version in kernels:: proper that the library
// calls. Reductions are blocked with a fixed block size and the per-block
// partials are summed in index order, so serial and parallel paths return
// identical results for any thread count.

namespace wb::kernels {

inline constexpr std::size_t reduce_block = 1024;

// Loops shorter than this run serially even when OpenMP is enabled; the
// fork/join overhead dominates below it (see tools/bench.cpp).
inline constexpr std::size_t parallel_grain = 1 << 14;

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
double max_abs(std::span<const double> a);

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
// out = alpha*a + beta*b
void axpby(double alpha, std::span<const double> a, double beta,
           std::span<const double> b, std::span<double> out);
// classical RK4 combination: out = y + (dt/6)*(k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(std::span<const double> y, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out);

void scale_complex(std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> m,
                   std::span<std::complex<double>> out);

} // namespace serial

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sum_sq(std::span<const double> a);
double max_abs(std::span<const double> a);

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out);
void axpby(double alpha, std::span<const double> a, double beta,
           std::span<const double> b, std::span<double> out);
void rk4_combine(std::span<const double> y, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4, double dt, std::span<double> out);

void scale_complex(std::span<const std::complex<double>> a,
                   std::span<const std::complex<double>> m,
                   std::span<std::complex<double>> out);

bool all_finite(std::span<const double> a);

} // namespace wb::kernels
