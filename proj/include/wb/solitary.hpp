#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wb/field.hpp"

namespace wb {

using FieldPair = std::pair<RealField, RealField>;

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Converged traveling-wave profile moving at Froude number c > 1.
struct SolitonResult {
  double c = 0.0;
  RealField eta;
  RealField vel;
  double amplitude = 0.0; // eta(0) after centering the peak at x = 0
  double residual = 0.0;  // |L(u) - N(u)| / |L(u)|, discrete L2
  int iterations = 0;
  std::vector<double> s_history; // stabilization factor per iteration
  bool converged = false;
};

// Splitting of the traveling-wave system c*eta = v + K(eta v),
// c*v = K eta + K v^2/2 into L(eta,v) = N(eta,v) with
//   L = [[c, -1], [-K, c]],   N = (K(eta v), K(v^2)/2),
// K = tanh D / D. Products in N are dealiased.
FieldPair apply_L(double c, const RealField& eta, const RealField& vel);
FieldPair apply_N(const RealField& eta, const RealField& vel);

// Mode-wise 2x2 solve; det(k) = c^2 - K(k) >= c^2 - 1, so L is invertible
// exactly when c^2 > 1. Throws std::invalid_argument for c <= 1.
FieldPair apply_L_inverse(double c, const RealField& f, const RealField& g);

// S = int (eta,v).L(eta,v) dx / int (eta,v).N(eta,v) dx; equals 1 at a
// solution. Throws SolveError when the denominator degenerates.
double stabilization_factor(double c, const RealField& eta,
                            const RealField& vel);

// Long-wave seed: a = 2(c-1), eta0 = a sech^2(sqrt(3a)/2 x), v0 = eta0.
FieldPair kdv_guess(double c, const GridPtr& grid);

// Petviashvili iteration u_{n+1} = S_n^2 L^{-1}(N(u_n)). Converges when the
// relative residual drops below tol; the result is centered so the peak of
// eta sits at x = 0. Running past max_iter returns a result flagged
// non-converged; a collapsing or degenerate iterate throws SolveError.
SolitonResult petviashvili_solve(double c, const GridPtr& grid,
                                 std::optional<FieldPair> guess = std::nullopt,
                                 double tol = 1e-10, int max_iter = 500);

// Ascending ladder of speeds with natural continuation (each point seeded by
// the nearest converged profile). Non-convergence of a point is recorded and
// the sweep continues. With parallel = true a sequentially-continued backbone
// seeds the remaining points, which are then solved concurrently; the seeding
// graph is fixed, so results do not depend on the thread count.
std::vector<SolitonResult> amplitude_speed_sweep(double c_min, double c_max,
                                                 int steps,
                                                 const GridPtr& grid,
                                                 double tol = 1e-10,
                                                 int max_iter = 500,
                                                 bool parallel = false);

} // namespace wb
