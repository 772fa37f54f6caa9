#include "wb/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "wb/errors.hpp"
#include "wb/evolution.hpp"
#include "wb/experiments.hpp"
#include "wb/fourier.hpp"
#include "wb/io.hpp"
#include "wb/kernels.hpp"
#include "wb/multiplier.hpp"
#include "wb/solitary.hpp"

namespace fs = std::filesystem;

namespace wb::cli {

namespace {

double resolve_dt(const RunConfig& cfg, const Grid& grid) {
  const double bound = dt_max(grid, cfg.cfl);
  if (cfg.dt == 0.0) return 0.25 * bound;
  if (!(cfg.dt > 0.0) || cfg.dt > bound * (1.0 + 1e-12))
    throw std::invalid_argument("dt = " + std::to_string(cfg.dt) +
                                " violates the stability bound " +
                                std::to_string(bound));
  return cfg.dt;
}

RealField gaussian_pulse(const GridPtr& grid, double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("pulse width must be positive");
  RealField f(grid);
  for (int j = 0; j < grid->n; ++j) {
    const double x = grid->node[j];
    f.values[j] = amplitude * std::exp(-x * x / (2.0 * width * width));
  }
  return f;
}

WaveState initial_state(const RunConfig& cfg, GridPtr& grid) {
  WaveState s;
  if (cfg.init == "gaussian") {
    grid = make_grid(cfg.n, cfg.L);
    s.eta = gaussian_pulse(grid, cfg.amplitude, cfg.width);
    s.vel = RealField(grid);
  } else if (cfg.init == "profile") {
    if (cfg.eta_file.empty())
      throw std::invalid_argument("init=profile requires --eta");
    s.eta = io::read_profile_csv(cfg.eta_file);
    grid = s.eta.grid;
    if (!cfg.vel_file.empty()) {
      s.vel = io::read_profile_csv(cfg.vel_file);
      if (!same_grid(s.eta, s.vel))
        throw std::invalid_argument("eta and vel profiles live on different grids");
    } else {
      s.vel = RealField(grid);
    }
  } else if (cfg.init == "reference") {
    if (cfg.reference_file.empty())
      throw std::invalid_argument("init=reference requires --reference");
    grid = make_grid(cfg.n, cfg.L);
    s = build_initial(load_reference(cfg.reference_file), grid);
  } else {
    throw std::invalid_argument("unknown init '" + cfg.init +
                                "' (gaussian | profile | reference)");
  }
  return s;
}

} // namespace

int cmd_simulate(const RunConfig& cfg) {
  GridPtr grid;
  WaveState s0 = initial_state(cfg, grid);
  const double dt = resolve_dt(cfg, *grid);
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");

  EvolveResult res = evolve(s0, cfg.t_end, dt, cfg.sample_every, cfg.cfl);

  fs::create_directories(cfg.out_dir);
  io::write_diagnostics_csv(fs::path(cfg.out_dir) / "diagnostics.csv", res.trace);
  io::write_profile_csv(fs::path(cfg.out_dir) / "eta_final.csv", res.final_state.eta);
  io::write_profile_csv(fs::path(cfg.out_dir) / "vel_final.csv", res.final_state.vel);

  if (res.blew_up) {
    std::fprintf(stderr, "simulate: blow-up at t = %.6g (last good state written)\n",
                 res.failure_time);
    return exit_blowup;
  }
  const auto& last = res.trace.back();
  std::printf("simulate: t = %g, H = %.12g, E = %.12g (%zu samples)\n",
              last.time, last.hamiltonian, last.energy_E, res.trace.size());
  return exit_ok;
}

int cmd_soliton(const RunConfig& cfg) {
  GridPtr grid = make_grid(cfg.n, cfg.L);
  SolitonResult sol = petviashvili_solve(cfg.c, grid, std::nullopt, cfg.tol,
                                         cfg.max_iter);
  if (!sol.converged) {
    std::fprintf(stderr,
                 "soliton: no convergence after %d iterations (residual %.3g)\n",
                 sol.iterations, sol.residual);
    return exit_nonconvergence;
  }
  io::write_soliton_bundle(cfg.out_dir, sol);
  std::printf("soliton: c = %g, amplitude = %.12g, residual = %.3g, %d iterations\n",
              sol.c, sol.amplitude, sol.residual, sol.iterations);
  return exit_ok;
}

int cmd_sweep(const RunConfig& cfg) {
  GridPtr grid = make_grid(cfg.n, cfg.L);
  auto results = amplitude_speed_sweep(cfg.c_min, cfg.c_max, cfg.steps, grid,
                                       cfg.tol, cfg.max_iter, cfg.parallel);
  fs::create_directories(cfg.out_dir);
  io::write_sweep_csv(fs::path(cfg.out_dir) / "sweep.csv", results);

  int failed = 0;
  for (const auto& r : results)
    if (!r.converged) ++failed;
  std::printf("sweep: %d points in [%g, %g], %d failed\n",
              static_cast<int>(results.size()), cfg.c_min, cfg.c_max, failed);
  return failed == 0 ? exit_ok : exit_nonconvergence;
}

int cmd_compare(const RunConfig& cfg) {
  if (cfg.reference_file.empty())
    throw std::invalid_argument("compare requires --reference");
  ReferenceWave ref = load_reference(cfg.reference_file);
  GridPtr grid = make_grid(cfg.n, cfg.L);
  const double dt = resolve_dt(cfg, *grid);

  ExperimentResult res =
      soliton_evolution_experiment(ref, grid, cfg.t_end, dt, cfg.sample_every);

  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);
  io::write_report_json(out / "report.json", res.report, *grid, dt);
  io::write_diagnostics_csv(out / "diagnostics.csv", res.trace);
  io::write_profile_csv(out / "eta_final.csv", res.eta_final);
  io::write_profile_csv(out / "eta_excised.csv", res.eta_excised);
  io::write_profile_csv(out / "eta_soliton.csv", res.eta_soliton);

  std::printf("compare: d = %.6g, c_fitted = %.8g, tail_mass = %.6g at t = %g\n",
              res.report.d, res.report.c_fitted, res.report.tail_mass,
              res.report.t);
  return exit_ok;
}

int cmd_validate() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::printf("%s %s (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
  };
  auto sci = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return std::string(buf);
  };

  // linear dispersion: a small right-moving mode travels at sqrt(tanh k / k)
  try {
    const GridPtr grid = make_grid(256, 4.0 * std::numbers::pi);
    const double k = 1.0;
    const double eps = 1e-8;
    const double cph = phase_speed(k);
    WaveState s;
    s.eta = RealField(grid);
    s.vel = RealField(grid);
    for (int j = 0; j < grid->n; ++j) {
      s.eta.values[j] = eps * std::cos(k * grid->node[j]);
      s.vel.values[j] = cph * s.eta.values[j];
    }
    const double T = 3.0;
    EvolveResult ev = evolve(s, T, 0.01, 1 << 20);
    auto spec = forward_transform(ev.final_state.eta);
    const int bin = 2; // k = 1 on L = 4*pi
    const double phase = -std::arg(spec[bin] / std::complex<double>(eps / 2, 0));
    const double c_meas = phase / (k * T);
    const double err = std::abs(c_meas - cph) / cph;
    report("dispersion", err < 1e-6, "rel err " + sci(err));
  } catch (const std::exception& e) {
    report("dispersion", false, e.what());
  }

  // Hamiltonian conservation on a smooth pulse
  try {
    const GridPtr grid = make_grid(256, 64.0);
    WaveState s;
    s.eta = gaussian_pulse(grid, 0.2, 4.0);
    s.vel = RealField(grid);
    EvolveResult ev = evolve(s, 5.0, 0.25 * dt_max(*grid), 1 << 20);
    const double h0 = ev.trace.front().hamiltonian;
    const double h1 = ev.trace.back().hamiltonian;
    const double drift = std::abs(h1 - h0) / std::abs(h0);
    report("conservation", drift < 1e-9, "relative drift " + sci(drift));
  } catch (const std::exception& e) {
    report("conservation", false, e.what());
  }

  // L^{-1} L identity on random fields
  try {
    const GridPtr grid = make_grid(128, 64.0);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealField f(grid), g(grid);
    for (int j = 0; j < grid->n; ++j) {
      f.values[j] = u(rng);
      g.values[j] = u(rng);
    }
    double worst = 0.0;
    for (double c : {1.1, 1.25, 2.0}) {
      auto lu = apply_L(c, f, g);
      auto back = apply_L_inverse(c, lu.first, lu.second);
      worst = std::max(worst, l2_norm(sub(back.first, f)) / l2_norm(f));
      worst = std::max(worst, l2_norm(sub(back.second, g)) / l2_norm(g));
    }
    report("L_inverse_identity", worst < 1e-12, "max rel err " + sci(worst));
  } catch (const std::exception& e) {
    report("L_inverse_identity", false, e.what());
  }

  // converged soliton is a fixed point of the Petviashvili map
  try {
    const GridPtr grid = make_grid(512, 128.0);
    const double tol = 1e-10;
    SolitonResult sol = petviashvili_solve(1.2, grid, std::nullopt, tol, 500);
    if (!sol.converged) throw SolveError("solve did not converge");
    const double s = stabilization_factor(sol.c, sol.eta, sol.vel);
    auto nu = apply_N(sol.eta, sol.vel);
    auto next = apply_L_inverse(sol.c, nu.first, nu.second);
    RealField d_eta(grid), d_vel(grid);
    kernels::axpby(s * s, next.first.span(), -1.0, sol.eta.span(), d_eta.span());
    kernels::axpby(s * s, next.second.span(), -1.0, sol.vel.span(), d_vel.span());
    const double move =
        std::sqrt(l2_norm(d_eta) * l2_norm(d_eta) + l2_norm(d_vel) * l2_norm(d_vel)) /
        std::sqrt(l2_norm(sol.eta) * l2_norm(sol.eta) +
                  l2_norm(sol.vel) * l2_norm(sol.vel));
    report("fixed_point_reapply", move < 10 * tol, "relative move " + sci(move));
  } catch (const std::exception& e) {
    report("fixed_point_reapply", false, e.what());
  }

  return failures == 0 ? exit_ok : exit_failure;
}

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Pseudo-spectral solver for the Whitham-Boussinesq system"};
  app.set_config("--config", "", "flat key=value config file; flags win");

  app.add_option("--n", cfg.n, "grid points (even, >= 8)");
  app.add_option("--L", cfg.L, "domain length");
  app.add_option("--dt", cfg.dt, "time step (default: stability bound / 4)");
  app.add_option("--cfl", cfg.cfl, "stability constant c_cfl");
  app.add_option("--t-end", cfg.t_end, "final time");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--sample-every", cfg.sample_every, "diagnostics stride (steps)");
  app.add_option("--tol", cfg.tol, "solver tolerance");
  app.add_option("--max-iter", cfg.max_iter, "solver iteration cap");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--parallel", cfg.parallel, "parallel sweep over speeds");

  app.add_option("--init", cfg.init, "simulate: gaussian | profile | reference");
  app.add_option("--amplitude", cfg.amplitude, "gaussian pulse amplitude");
  app.add_option("--width", cfg.width, "gaussian pulse width");
  app.add_option("--eta", cfg.eta_file, "eta profile CSV");
  app.add_option("--vel", cfg.vel_file, "vel profile CSV");
  app.add_option("--c", cfg.c, "wave speed (Froude number)");
  app.add_option("--c-min", cfg.c_min, "sweep start speed");
  app.add_option("--c-max", cfg.c_max, "sweep end speed");
  app.add_option("--steps", cfg.steps, "sweep points");
  app.add_option("--reference", cfg.reference_file, "reference wave CSV");

  auto* sim = app.add_subcommand("simulate", "evolve an initial state");
  auto* sol = app.add_subcommand("soliton", "compute one solitary wave");
  auto* swp = app.add_subcommand("sweep", "amplitude-speed curve a(c)");
  auto* cmp = app.add_subcommand("compare", "evolve a reference wave and compare");
  auto* val = app.add_subcommand("validate", "run the built-in invariant checks");
  for (auto* s : {sim, sol, swp, cmp, val}) s->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (sim->parsed()) return cmd_simulate(cfg);
    if (sol->parsed()) return cmd_soliton(cfg);
    if (swp->parsed()) return cmd_sweep(cfg);
    if (cmp->parsed()) return cmd_compare(cfg);
    if (val->parsed()) return cmd_validate();
  } catch (const BlowUpError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_blowup;
  } catch (const SolveError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_nonconvergence;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_io;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_config;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_failure;
  }
  return exit_config;
}

} // namespace wb::cli
