#include "wb/field.hpp"

#include <cmath>
#include <stdexcept>

#include "wb/kernels.hpp"

namespace wb {

bool same_grid(const RealField& a, const RealField& b) {
  if (a.grid == b.grid) return true;
  return a.grid && b.grid && same_grid(*a.grid, *b.grid);
}

void require_same_grid(const RealField& a, const RealField& b) {
  if (!same_grid(a, b)) throw std::invalid_argument("fields live on different grids");
}

double integrate(const RealField& f) {
  return f.grid->spacing() * kernels::sum(f.span());
}

double inner(const RealField& a, const RealField& b) {
  require_same_grid(a, b);
  return a.grid->spacing() * kernels::dot(a.span(), b.span());
}

double l2_norm(const RealField& f) {
  return std::sqrt(f.grid->spacing() * kernels::sum_sq(f.span()));
}

double mean(const RealField& f) {
  return kernels::sum(f.span()) / f.grid->n;
}

double max_abs(const RealField& f) { return kernels::max_abs(f.span()); }

bool all_finite(const RealField& f) { return kernels::all_finite(f.span()); }

RealField add(const RealField& a, const RealField& b) {
  require_same_grid(a, b);
  RealField out(a.grid);
  kernels::axpby(1.0, a.span(), 1.0, b.span(), out.span());
  return out;
}

RealField sub(const RealField& a, const RealField& b) {
  require_same_grid(a, b);
  RealField out(a.grid);
  kernels::axpby(1.0, a.span(), -1.0, b.span(), out.span());
  return out;
}

RealField scaled(const RealField& a, double alpha) {
  RealField out(a.grid);
  kernels::axpby(alpha, a.span(), 0.0, a.span(), out.span());
  return out;
}

RealField pointwise_product(const RealField& a, const RealField& b) {
  require_same_grid(a, b);
  RealField out(a.grid);
  kernels::multiply(a.span(), b.span(), out.span());
  return out;
}

} // namespace wb
