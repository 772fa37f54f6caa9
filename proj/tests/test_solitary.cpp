#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wb/evolution.hpp"
#include "wb/fourier.hpp"
#include "wb/solitary.hpp"

using namespace wb;
using std::numbers::pi;

namespace {

double max_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

double pair_rel_diff(const FieldPair& a, const FieldPair& b) {
  const double num = std::hypot(l2_norm(sub(a.first, b.first)),
                                l2_norm(sub(a.second, b.second)));
  const double den = std::hypot(l2_norm(a.first), l2_norm(a.second));
  return num / den;
}

} // namespace

TEST_CASE("L and N vanish on the zero pair") {
  auto g = make_grid(64, 2 * pi);
  RealField zero(g);
  auto lu = apply_L(1.25, zero, zero);
  auto nu = apply_N(zero, zero);
  CHECK(max_abs(lu.first) == 0.0);
  CHECK(max_abs(lu.second) == 0.0);
  CHECK(max_abs(nu.first) == 0.0);
  CHECK(max_abs(nu.second) == 0.0);
}

TEST_CASE("L on a single cosine mode") {
  auto g = make_grid(128, 2 * pi);
  auto cosx = oracles::make_field(g, [](double x) { return std::cos(x); });
  auto lu = apply_L(1.25, cosx, RealField(g));
  auto expect1 = scaled(cosx, 1.25);
  auto expect2 = scaled(cosx, -std::tanh(1.0));
  CHECK(max_diff(lu.first, expect1) < 1e-13);
  CHECK(max_diff(lu.second, expect2) < 1e-13);
}

TEST_CASE("L inverse: closed forms and identity") {
  auto g = make_grid(128, 2 * pi);

  // k = 0 mode: det = c^2 - 1
  const double c = 1.25;
  RealField ones(g, 1.0);
  auto inv = apply_L_inverse(c, ones, RealField(g));
  CHECK(inv.first.values[0] == doctest::Approx(c / (c * c - 1.0)).epsilon(1e-13));
  CHECK(inv.second.values[0] == doctest::Approx(1.0 / (c * c - 1.0)).epsilon(1e-13));

  // k = 1 mode at c = 1.01: eta amplitude c / (c^2 - tanh 1)
  auto cosx = oracles::make_field(g, [](double x) { return std::cos(x); });
  auto inv2 = apply_L_inverse(1.01, cosx, RealField(g));
  const double amp = 1.01 / (1.01 * 1.01 - std::tanh(1.0));
  CHECK(inv2.first.values[g->n / 2] == doctest::Approx(amp).epsilon(1e-12));

  // inverse of L is the identity on random fields
  for (double cc : {1.1, 1.25, 2.0}) {
    CAPTURE(cc);
    auto f = oracles::random_field(g, 17);
    auto h = oracles::random_field(g, 18);
    auto lu = apply_L(cc, f, h);
    auto back = apply_L_inverse(cc, lu.first, lu.second);
    CHECK(l2_norm(sub(back.first, f)) / l2_norm(f) < 1e-12);
    CHECK(l2_norm(sub(back.second, h)) / l2_norm(h) < 1e-12);
  }

  CHECK_THROWS_AS(apply_L_inverse(1.0, ones, ones), std::invalid_argument);
  CHECK_THROWS_AS(apply_L_inverse(0.9, ones, ones), std::invalid_argument);
}

TEST_CASE("stabilization factor: fixed point, homogeneity, degenerate input") {
  auto g = make_grid(512, 128.0);
  SolitonResult sol = petviashvili_solve(1.2, g);
  REQUIRE(sol.converged);
  CHECK(stabilization_factor(1.2, sol.eta, sol.vel) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // S(lambda u) = S(u) / lambda
  auto [ge, gv] = kdv_guess(1.1, g);
  const double s = stabilization_factor(1.1, ge, gv);
  const double s2 = stabilization_factor(1.1, scaled(ge, 2.0), scaled(gv, 2.0));
  CHECK(s2 == doctest::Approx(0.5 * s).epsilon(1e-12));

  // KdV seed at c = 1.05 gives a sensible finite factor
  auto [e5, v5] = kdv_guess(1.05, g);
  const double s5 = stabilization_factor(1.05, e5, v5);
  CHECK(std::isfinite(s5));
  CHECK(std::abs(s5 - 1.0) < 0.5);

  RealField zero(g);
  CHECK_THROWS_AS(stabilization_factor(1.2, zero, zero), SolveError);
}

TEST_CASE("kdv_guess closed forms") {
  auto g = make_grid(1024, 512.0);
  auto [eta, vel] = kdv_guess(1.005, g);
  CHECK(max_abs(eta) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(max_diff(eta, vel) == 0.0);
  // width scale sqrt(3a)/2: value at x with w*x = 1 is a*sech^2(1)
  const double w = 0.5 * std::sqrt(3.0 * 0.01);
  CHECK(w == doctest::Approx(0.0866).epsilon(1e-3));
  RealField direct = oracles::make_field(g, [&](double x) {
    const double s = 1.0 / std::cosh(w * x);
    return 0.01 * s * s;
  });
  CHECK(max_diff(eta, direct) == 0.0);

  // amplitude vanishes as c -> 1+
  auto [tiny, tv] = kdv_guess(1.0 + 1e-9, g);
  CHECK(max_abs(tiny) == doctest::Approx(2e-9).epsilon(1e-12));
  CHECK_THROWS_AS(kdv_guess(1.0, g), std::invalid_argument);
}

TEST_CASE("petviashvili solve at c = 1.05: KdV regime") {
  auto g = make_grid(2048, 256.0);
  SolitonResult sol = petviashvili_solve(1.05, g);
  REQUIRE(sol.converged);
  CHECK(sol.residual < 1e-10);
  CHECK(sol.iterations < 200);
  CHECK(sol.amplitude > 0.0);
  // KdV long-wave oracle: a = 2(c-1) = 0.1 within 15%
  CHECK(std::abs(sol.amplitude - 0.1) / 0.1 < 0.15);
  // S -> 1 at convergence
  CHECK(std::abs(sol.s_history.back() - 1.0) < 1e-8);

  // evenness about the peak after centering
  const int n = g->n;
  double asym = 0.0;
  for (int j = 1; j < n; ++j)
    asym = std::max(asym,
                    std::abs(sol.eta.values[j] - sol.eta.values[n - j]));
  CHECK(asym < 1e-8 * sol.amplitude);

  // fixed-point consistency: one more application of S^2 L^{-1} N moves the
  // iterate by less than 10 * tol
  const double s = stabilization_factor(sol.c, sol.eta, sol.vel);
  auto nu = apply_N(sol.eta, sol.vel);
  auto next = apply_L_inverse(sol.c, nu.first, nu.second);
  FieldPair moved{scaled(next.first, s * s), scaled(next.second, s * s)};
  CHECK(pair_rel_diff({sol.eta, sol.vel}, moved) < 10 * 1e-10);
}

TEST_CASE("petviashvili preconditions and failure modes") {
  auto g = make_grid(256, 64.0);
  CHECK_THROWS_AS(petviashvili_solve(0.9, g), std::invalid_argument);
  CHECK_THROWS_AS(petviashvili_solve(1.0, g), std::invalid_argument);

  SolitonResult r = petviashvili_solve(1.2, g, std::nullopt, 1e-10, 3);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.residual > 1e-10);
  CHECK(r.s_history.size() == 3);
}

TEST_CASE("residual certifies the traveling-wave equations") {
  // L(u) = N(u) at a converged result, checked against the raw system
  auto g = make_grid(1024, 256.0);
  SolitonResult sol = petviashvili_solve(1.25, g, std::nullopt, 1e-11, 500);
  REQUIRE(sol.converged);
  auto lu = apply_L(sol.c, sol.eta, sol.vel);
  auto nu = apply_N(sol.eta, sol.vel);
  CHECK(pair_rel_diff(lu, nu) < 1e-10);
}

TEST_CASE("soliton translates at speed c under the evolution") {
  auto g = make_grid(1024, 128.0);
  SolitonResult sol = petviashvili_solve(1.25, g, std::nullopt, 1e-11, 500);
  REQUIRE(sol.converged);
  const double T = g->length / (2.0 * sol.c);
  WaveState s{sol.eta, sol.vel, 0.0};
  EvolveResult ev = evolve(s, T, 0.125 * dt_max(*g), 1 << 20);
  REQUIRE_FALSE(ev.blew_up);
  // realign by shifting back half a domain
  RealField back = shift_field(ev.final_state.eta, -0.5 * g->length);
  CHECK(l2_norm(sub(back, sol.eta)) / l2_norm(sol.eta) < 1e-6);
}

TEST_CASE("amplitude-speed sweep: continuation, monotonicity, parallel mode") {
  auto g = make_grid(1024, 256.0);
  auto sweep = amplitude_speed_sweep(1.02, 1.2, 10, g, 1e-10, 400);
  REQUIRE(sweep.size() == 10);
  for (const auto& r : sweep) {
    CAPTURE(r.c);
    CHECK(r.converged);
    CHECK(r.residual < 1e-10);
  }
  for (std::size_t i = 1; i < sweep.size(); ++i)
    CHECK(sweep[i].amplitude > sweep[i - 1].amplitude);

  // a single-point sweep degenerates to one solve
  auto single = amplitude_speed_sweep(1.05, 1.05 + 1e-9, 2, g, 1e-10, 400);
  auto direct = petviashvili_solve(1.05, g, std::nullopt, 1e-10, 400);
  CHECK(single.front().amplitude ==
        doctest::Approx(direct.amplitude).epsilon(1e-12));

  // the parallel seeding graph reproduces the sequential amplitudes
  auto par = amplitude_speed_sweep(1.02, 1.2, 10, g, 1e-10, 400, true);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    CHECK(par[i].converged == sweep[i].converged);
    CHECK(std::abs(par[i].amplitude - sweep[i].amplitude) < 1e-6);
  }

  CHECK_THROWS_AS(amplitude_speed_sweep(0.9, 1.2, 5, g), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_speed_sweep(1.1, 1.05, 5, g), std::invalid_argument);
  CHECK_THROWS_AS(amplitude_speed_sweep(1.1, 1.2, 1, g), std::invalid_argument);
}
