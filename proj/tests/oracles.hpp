#pragma once

// Independent oracles for the test suite. These deliberately avoid the
// library's FFT/stepping code paths: the transform oracle is a direct O(n^2)
// evaluation of the defining sums, and the ODE oracle is a self-contained
// scalar RK4 integrator.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "wb/field.hpp"
#include "wb/grid.hpp"

namespace oracles {

// fhat_m = (1/n) sum_j f_j exp(-i k_m x_j)
inline std::vector<std::complex<double>> naive_forward(const wb::RealField& f) {
  const auto& g = *f.grid;
  std::vector<std::complex<double>> out(g.n);
  for (int m = 0; m < g.n; ++m) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < g.n; ++j)
      acc += f.values[j] *
             std::exp(std::complex<double>(0.0, -g.wavenumber[m] * g.node[j]));
    out[m] = acc / static_cast<double>(g.n);
  }
  return out;
}

// f_j = sum_m fhat_m exp(i k_m x_j)
inline wb::RealField naive_backward(const std::vector<std::complex<double>>& spec,
                                    const wb::GridPtr& grid) {
  wb::RealField f(grid);
  for (int j = 0; j < grid->n; ++j) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < grid->n; ++m)
      acc += spec[m] *
             std::exp(std::complex<double>(0.0, grid->wavenumber[m] * grid->node[j]));
    f.values[j] = acc.real();
  }
  return f;
}

// scalar RK4 for y' = f(y) with fixed step count
inline double integrate_ode(std::function<double(double)> f, double y0,
                            double t_end, int steps) {
  double y = y0;
  const double h = t_end / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

inline wb::RealField make_field(const wb::GridPtr& grid,
                                const std::function<double(double)>& f) {
  wb::RealField out(grid);
  for (int j = 0; j < grid->n; ++j) out.values[j] = f(grid->node[j]);
  return out;
}

inline wb::RealField random_field(const wb::GridPtr& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  wb::RealField out(grid);
  for (auto& v : out.values) v = u(rng);
  return out;
}

} // namespace oracles
