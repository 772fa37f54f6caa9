// Timing comparison between the serial reference kernels and the OpenMP
// versions the library uses, plus the full RHS evaluation. Run manually:
//   ./build/tools/wb_bench [max_log2]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "wb/evolution.hpp"
#include "wb/kernels.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

template <class F>
double time_us(F&& f, int reps) {
  f(); // warm up
  const auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::micro>(t1 - t0).count() / reps;
}

volatile double sink;

} // namespace

int main(int argc, char** argv) {
  const int max_log2 = argc > 1 ? std::atoi(argv[1]) : 20;
#if defined(_OPENMP)
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled\n");
#endif

  std::printf("%-12s %9s %12s %12s %8s\n", "kernel", "n", "serial(us)",
              "parallel(us)", "speedup");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int lg = 12; lg <= max_log2; lg += 2) {
    const std::size_t n = std::size_t{1} << lg;
    std::vector<double> a(n), b(n), c(n), d(n), out(n);
    for (auto* v : {&a, &b, &c, &d})
      for (auto& x : *v) x = u(rng);
    const int reps = std::max(1, static_cast<int>((1 << 22) / n));

    const double s_dot = time_us([&] { sink = wb::kernels::serial::dot(a, b); }, reps);
    const double p_dot = time_us([&] { sink = wb::kernels::dot(a, b); }, reps);
    std::printf("%-12s %9zu %12.2f %12.2f %8.2f\n", "dot", n, s_dot, p_dot,
                s_dot / p_dot);

    const double s_mul =
        time_us([&] { wb::kernels::serial::multiply(a, b, out); }, reps);
    const double p_mul = time_us([&] { wb::kernels::multiply(a, b, out); }, reps);
    std::printf("%-12s %9zu %12.2f %12.2f %8.2f\n", "multiply", n, s_mul, p_mul,
                s_mul / p_mul);

    const double s_rk4 = time_us(
        [&] { wb::kernels::serial::rk4_combine(a, b, c, d, a, 0.01, out); }, reps);
    const double p_rk4 =
        time_us([&] { wb::kernels::rk4_combine(a, b, c, d, a, 0.01, out); }, reps);
    std::printf("%-12s %9zu %12.2f %12.2f %8.2f\n", "rk4_combine", n, s_rk4,
                p_rk4, s_rk4 / p_rk4);
  }

  std::printf("\nfull RHS evaluation (FFT-bound):\n");
  for (int lg = 10; lg <= 13; ++lg) {
    const int n = 1 << lg;
    auto grid = wb::make_grid(n, 256.0);
    wb::WaveState s;
    s.eta = wb::RealField(grid);
    s.vel = wb::RealField(grid);
    for (int j = 0; j < n; ++j) {
      const double x = grid->node[j];
      s.eta.values[j] = 0.2 * std::exp(-x * x / 32.0);
      s.vel.values[j] = 0.1 * std::exp(-x * x / 32.0);
    }
    const double t = time_us([&] { auto r = wb::rhs(s); sink = r.first.values[0]; },
                             std::max(1, (1 << 14) / n));
    std::printf("  n = %6d: %10.2f us\n", n, t);
  }
  return 0;
}
