#include "wb/solitary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "wb/fourier.hpp"
#include "wb/kernels.hpp"
#include "wb/multiplier.hpp"

namespace wb {

namespace {

double K_of(double k) { return k == 0.0 ? 1.0 : std::tanh(k) / k; }

// K applied to the dealiased product a*b
RealField K_dealiased_product(const RealField& a, const RealField& b) {
  const Grid& g = *a.grid;
  RealField prod(a.grid);
  kernels::multiply(a.span(), b.span(), prod.span());
  auto spec = forward_transform(prod);
  for (int j = 0; j < g.n; ++j) {
    if (3 * std::abs(g.freq_index(j)) > g.n)
      spec[j] = 0.0;
    else
      spec[j] *= K_of(g.wavenumber[j]);
  }
  return backward_transform(spec, a.grid);
}

RealField apply_K(const RealField& f) {
  const Grid& g = *f.grid;
  auto spec = forward_transform(f);
  for (int j = 0; j < g.n; ++j) spec[j] *= K_of(g.wavenumber[j]);
  return backward_transform(spec, f.grid);
}

double pair_norm(const FieldPair& u) {
  return std::sqrt(l2_norm(u.first) * l2_norm(u.first) +
                   l2_norm(u.second) * l2_norm(u.second));
}

double relative_residual(const FieldPair& lu, const FieldPair& nu) {
  const double num = pair_norm({sub(lu.first, nu.first), sub(lu.second, nu.second)});
  return num / pair_norm(lu);
}

double stabilization_from(const FieldPair& u, const FieldPair& lu,
                          const FieldPair& nu) {
  const double num = inner(u.first, lu.first) + inner(u.second, lu.second);
  const double den = inner(u.first, nu.first) + inner(u.second, nu.second);
  const double scale = inner(u.first, u.first) + inner(u.second, u.second);
  if (std::abs(den) < 1e-14 * scale)
    throw SolveError("stabilization factor: degenerate iterate (vanishing nonlinear pairing)");
  return num / den;
}

// Even localized profiles satisfy fhat(k) = |fhat(k)| exp(-i k x0); the phase
// of the fundamental mode recovers the center to round-off.
double center_from_phase(const RealField& f) {
  auto spec = forward_transform(f);
  const double k1 = f.grid->wavenumber[1];
  return -std::arg(spec[1]) / k1;
}

} // namespace

FieldPair apply_L(double c, const RealField& eta, const RealField& vel) {
  require_same_grid(eta, vel);
  RealField first(eta.grid), second(eta.grid);
  kernels::axpby(c, eta.span(), -1.0, vel.span(), first.span());
  const RealField k_eta = apply_K(eta);
  kernels::axpby(-1.0, k_eta.span(), c, vel.span(), second.span());
  return {std::move(first), std::move(second)};
}

FieldPair apply_N(const RealField& eta, const RealField& vel) {
  require_same_grid(eta, vel);
  RealField first = K_dealiased_product(eta, vel);
  RealField second = K_dealiased_product(vel, vel);
  kernels::axpby(0.5, second.span(), 0.0, second.span(), second.span());
  return {std::move(first), std::move(second)};
}

FieldPair apply_L_inverse(double c, const RealField& f, const RealField& g) {
  if (!(c > 1.0))
    throw std::invalid_argument("apply_L_inverse: L is invertible only for c > 1");
  require_same_grid(f, g);
  const Grid& grid = *f.grid;
  auto fh = forward_transform(f);
  auto gh = forward_transform(g);
  std::vector<std::complex<double>> eh(grid.n), vh(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double K = K_of(grid.wavenumber[j]);
    const double det = c * c - K;
    eh[j] = (c * fh[j] + gh[j]) / det;
    vh[j] = (K * fh[j] + c * gh[j]) / det;
  }
  return {backward_transform(eh, f.grid), backward_transform(vh, f.grid)};
}

double stabilization_factor(double c, const RealField& eta,
                            const RealField& vel) {
  const FieldPair u{eta, vel};
  return stabilization_from(u, apply_L(c, eta, vel), apply_N(eta, vel));
}

FieldPair kdv_guess(double c, const GridPtr& grid) {
  if (!(c > 1.0)) throw std::invalid_argument("kdv_guess: requires c > 1");
  const double a = 2.0 * (c - 1.0);
  const double w = 0.5 * std::sqrt(3.0 * a);
  RealField eta(grid);
  for (int j = 0; j < grid->n; ++j) {
    const double s = 1.0 / std::cosh(w * grid->node[j]);
    eta.values[j] = a * s * s;
  }
  return {eta, eta};
}

SolitonResult petviashvili_solve(double c, const GridPtr& grid,
                                 std::optional<FieldPair> guess, double tol,
                                 int max_iter) {
  if (!(c > 1.0))
    throw std::invalid_argument("petviashvili_solve: solitary waves require c > 1");

  FieldPair u = guess ? std::move(*guess) : kdv_guess(c, grid);
  require_same_grid(u.first, u.second);
  if (!same_grid(*u.first.grid, *grid))
    throw std::invalid_argument("petviashvili_solve: guess lives on a different grid");

  SolitonResult result;
  result.c = c;
  double res = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < max_iter; ++iter) {
    const FieldPair lu = apply_L(c, u.first, u.second);
    const FieldPair nu = apply_N(u.first, u.second);
    res = relative_residual(lu, nu);
    const double s = stabilization_from(u, lu, nu);
    result.s_history.push_back(s);
    if (res < tol) {
      result.converged = true;
      result.iterations = iter;
      break;
    }

    FieldPair next = apply_L_inverse(c, nu.first, nu.second);
    const double s2 = s * s;
    kernels::axpby(s2, next.first.span(), 0.0, next.first.span(), next.first.span());
    kernels::axpby(s2, next.second.span(), 0.0, next.second.span(), next.second.span());
    u = std::move(next);
    result.iterations = iter + 1;

    if (l2_norm(u.first) < 1e-12)
      throw SolveError("petviashvili_solve: iterate collapsed to zero");
  }

  if (!result.converged)
    res = relative_residual(apply_L(c, u.first, u.second),
                            apply_N(u.first, u.second));

  // center the peak at x = 0 by a spectral phase shift
  const double x0 = center_from_phase(u.first);
  result.eta = shift_field(u.first, -x0);
  result.vel = shift_field(u.second, -x0);
  result.residual = res;
  result.amplitude = result.eta.values[grid->n / 2];
  return result;
}

std::vector<SolitonResult> amplitude_speed_sweep(double c_min, double c_max,
                                                 int steps,
                                                 const GridPtr& grid,
                                                 double tol, int max_iter,
                                                 bool parallel) {
  if (!(1.0 < c_min && c_min < c_max))
    throw std::invalid_argument("amplitude_speed_sweep: need 1 < c_min < c_max");
  if (steps < 2) throw std::invalid_argument("amplitude_speed_sweep: steps >= 2");

  std::vector<double> speeds(steps);
  for (int i = 0; i < steps; ++i)
    speeds[i] = c_min + (c_max - c_min) * i / (steps - 1.0);

  std::vector<SolitonResult> out(steps);
  auto solve_seeded = [&](double c, const FieldPair* seed) {
    try {
      std::optional<FieldPair> g;
      if (seed) g = *seed;
      return petviashvili_solve(c, grid, std::move(g), tol, max_iter);
    } catch (const SolveError&) {
      SolitonResult failed;
      failed.c = c;
      failed.eta = RealField(grid);
      failed.vel = RealField(grid);
      failed.residual = std::numeric_limits<double>::infinity();
      return failed;
    }
  };

  if (!parallel) {
    const FieldPair* seed = nullptr;
    FieldPair last;
    for (int i = 0; i < steps; ++i) {
      out[i] = solve_seeded(speeds[i], seed);
      if (out[i].converged) {
        last = {out[i].eta, out[i].vel};
        seed = &last;
      }
    }
    return out;
  }

  // Fixed-stride backbone, continued sequentially; the fill points are then
  // independent and safe to solve concurrently.
  constexpr int stride = 8;
  const FieldPair* seed = nullptr;
  FieldPair last;
  for (int i = 0; i < steps; i += stride) {
    out[i] = solve_seeded(speeds[i], seed);
    if (out[i].converged) {
      last = {out[i].eta, out[i].vel};
      seed = &last;
    }
  }
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < steps; ++i) {
    if (i % stride == 0) continue;
    const int anchor = (i / stride) * stride;
    FieldPair local_seed;
    const FieldPair* sp = nullptr;
    if (out[anchor].converged) {
      local_seed = {out[anchor].eta, out[anchor].vel};
      sp = &local_seed;
    }
    out[i] = solve_seeded(speeds[i], sp);
  }
  return out;
}

} // namespace wb
