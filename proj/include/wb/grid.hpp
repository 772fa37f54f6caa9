#pragma once

#include <memory>
#include <vector>

namespace wb {

// Uniform periodic grid on [-L/2, L/2) with the signed wavenumber lattice
// k_j = (2*pi/L)*m_j, m = 0, 1, ..., n/2-1, -n/2, ..., -1.
struct Grid {
  int n = 0;
  double length = 0.0;
  std::vector<double> node;
  std::vector<double> wavenumber;

  double spacing() const { return length / n; }
  double k_max() const;                 // magnitude of the Nyquist wavenumber
  int freq_index(int j) const;          // signed integer frequency m_j
  int nyquist_index() const { return n / 2; }
};

using GridPtr = std::shared_ptr<const Grid>;

// Throws std::invalid_argument for odd n, n < 8, or length <= 0.
GridPtr make_grid(int n, double length);

bool same_grid(const Grid& a, const Grid& b);

} // namespace wb
