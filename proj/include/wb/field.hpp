#pragma once

#include <span>
#include <vector>

#include "wb/grid.hpp"

namespace wb {

// Real-valued grid function. Plain value type; the grid is shared.
struct RealField {
  GridPtr grid;
  std::vector<double> values;

  RealField() = default;
  explicit RealField(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), values(static_cast<std::size_t>(grid->n), fill) {}

  int size() const { return grid ? grid->n : 0; }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<const double> span() const { return values; }
  std::span<double> span() { return values; }
};

bool same_grid(const RealField& a, const RealField& b);
void require_same_grid(const RealField& a, const RealField& b);

// Periodic trapezoid quadrature (= rectangle rule), spectrally accurate.
double integrate(const RealField& f);
double inner(const RealField& a, const RealField& b); // \int a b dx
double l2_norm(const RealField& f);                   // sqrt(\int f^2 dx)
double mean(const RealField& f);
double max_abs(const RealField& f);
bool all_finite(const RealField& f);

RealField add(const RealField& a, const RealField& b);
RealField sub(const RealField& a, const RealField& b);
RealField scaled(const RealField& a, double alpha);
RealField pointwise_product(const RealField& a, const RealField& b);

} // namespace wb
