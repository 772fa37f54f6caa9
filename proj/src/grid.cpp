#include "wb/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wb {

double Grid::k_max() const {
  return std::numbers::pi * n / length; // (2*pi/L)*(n/2)
}

int Grid::freq_index(int j) const { return j < n / 2 ? j : j - n; }

GridPtr make_grid(int n, double length) {
  if (n < 8) throw std::invalid_argument("grid: n must be >= 8, got " + std::to_string(n));
  if (n % 2 != 0) throw std::invalid_argument("grid: n must be even, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: length must be positive");

  auto g = std::make_shared<Grid>();
  g->n = n;
  g->length = length;
  g->node.resize(n);
  g->wavenumber.resize(n);
  const double k0 = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) {
    // x_j = -L/2 + j*L/n, written so that x_{n/2} is exactly 0
    g->node[j] = length * static_cast<double>(2 * j - n) / (2.0 * n);
    g->wavenumber[j] = k0 * g->freq_index(j);
  }
  return g;
}

bool same_grid(const Grid& a, const Grid& b) {
  return a.n == b.n && a.length == b.length;
}

} // namespace wb
