#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "wb/evolution.hpp"
#include "wb/field.hpp"
#include "wb/solitary.hpp"

namespace wb {

// Externally supplied solitary-wave data: elevation eta0, horizontal u1 and
// vertical u2 velocities on an arbitrary strictly-increasing abscissa, plus
// the wave speed c.
struct ReferenceWave {
  std::vector<double> x;
  std::vector<double> eta0;
  std::vector<double> u1;
  std::vector<double> u2;
  double c = 0.0;
};

struct ComparisonReport {
  double d = 0.0;         // relative difference against the fitted soliton
  double c_fitted = 0.0;  // least-squares speed of the leading wave
  double tail_mass = 0.0; // L2 norm of the excised dispersive tail
  double t = 0.0;         // measurement time
};

struct ExperimentResult {
  ComparisonReport report;
  std::vector<DiagnosticsRecord> trace;
  std::vector<double> peak_time;
  std::vector<double> peak_position; // unwrapped
  RealField eta_final;
  RealField eta_excised;
  RealField eta_soliton; // fitted soliton aligned with the leading wave
};

// d(eta1, eta2) = |eta1 - eta2| / |eta1| in the discrete L2 norm.
// Throws for a vanishing first argument.
double relative_difference(const RealField& eta1, const RealField& eta2);

// Reads the CSV schema `x,eta0,u1,u2`. The speed comes from a JSON sidecar
// `{"c": <real>}` (same path with the extension replaced by .json) or an
// inline comment `# c=<real>`; the sidecar wins on conflict. Schema
// violations, non-monotone x and non-decaying tails are reported distinctly.
ReferenceWave load_reference(const std::filesystem::path& path);

void validate_reference(const ReferenceWave& ref);

// Resamples the reference onto the grid (cubic interpolation onto the
// uniform nodes, spectral representation thereafter) and builds
//   eta(x,0) = eta0,  v(x,0) = K(u1 + u2 eta0_x)
// with the product dealiased. Throws if the reference support exceeds the
// grid domain.
WaveState build_initial(const ReferenceWave& ref, const GridPtr& grid);

// Synthetic reference from a computed solitary wave: u1 = K^{-1} v, u2 = 0,
// so build_initial reproduces the profile exactly.
ReferenceWave reference_from_soliton(const SolitonResult& sol);

// Sub-grid location of the elevation peak (centroid of the eighth power of
// the positive part around the discrete maximum). Throws when the global
// maximum is attained at separated grid points.
double locate_peak(const RealField& eta);

// Evolves the reference data, excises the dispersive tail behind the leading
// wave, fits the leading-wave speed from the peak trajectory over the last
// quarter of the run, solves the traveling-wave system at the fitted speed
// and reports the relative difference. With t_end = 0 the comparison is made
// against the initial state at the reference speed.
ExperimentResult soliton_evolution_experiment(const ReferenceWave& ref,
                                              const GridPtr& grid,
                                              double t_end, double dt,
                                              int sample_every = 20);

// Closed form of the a priori energy bound E0 e^{Ct} / (1 - E0(e^{Ct} - 1)),
// the solution of E' = C(E + E^2). Throws for t at or past the blow-up time
// of the bound.
double apriori_bound(double E0, double C, double t);
double apriori_blowup_time(double E0, double C);

struct GrowthCurve {
  std::vector<double> time;
  std::vector<double> ratio; // R(t) = E(theta, w) / E(theta_0, w_0)
  double c_hat = 0.0;          // fitted exponential rate
  bool bound_ok = false;       // R(t) <= 1.1 exp(c_hat t) over the run
};

// Evolves s0 and a perturbed copy (seeded smooth random perturbation of
// E-norm eps) and records the growth of the difference energy.
GrowthCurve continuous_dependence_test(const WaveState& s0, double eps,
                                       double t_end, double dt, uint64_t seed,
                                       int sample_every = 10);

} // namespace wb
