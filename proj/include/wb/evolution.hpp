#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wb/field.hpp"

namespace wb {

// Phase point of the system: surface elevation eta and velocity variable v.
struct WaveState {
  RealField eta;
  RealField vel;
  double time = 0.0;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double hamiltonian = 0.0;
  double energy_E = 0.0;
  double functional_B = 0.0;
  double mean_eta = 0.0;
  double mean_vel = 0.0;
  double l2_eta = 0.0;
  double l2_vel = 0.0;
};

struct BlowUpError : std::runtime_error {
  explicit BlowUpError(double t)
      : std::runtime_error("solution blew up at t = " + std::to_string(t)),
        time(t) {}
  double time;
};

// Linear dispersion of the system: omega(k) = sqrt(k tanh k), phase speed
// sqrt(tanh k / k) -> 1 as k -> 0.
double dispersion_omega(double k);
double phase_speed(double k);

// Right-hand side
//   eta_t = -v_x - i tanh D (eta v)
//   v_t   = -i tanh D eta - i tanh D (v^2) / 2
// with the quadratic products dealiased by the 2/3 rule before the tanh D
// multiplier is applied. Throws BlowUpError on a non-finite input state.
std::pair<RealField, RealField> rhs(const WaveState& s);

// Largest stable step, c_cfl / sqrt(k_max); the linear phase omega grows like
// sqrt(|k|) so explicit stepping only needs dt ~ k_max^{-1/2}.
double dt_max(const Grid& grid, double c_cfl = 1.0);

// Classical explicit RK4. Rejects dt outside (0, dt_max]; throws BlowUpError
// if the update produces non-finite samples.
WaveState step_rk4(const WaveState& s, double dt, double c_cfl = 1.0);

double hamiltonian(const WaveState& s);   // 1/2 int eta^2 + v (D/tanh D) v + eta v^2
double functional_B(const WaveState& s);  // 1/2 int eta |D| eta + v |D|^2 v
double energy_E(const WaveState& s);      // sqrt(1/2 |eta|^2 + 1/2 |v|^2 + B)
std::pair<double, double> means(const WaveState& s);

DiagnosticsRecord diagnose(const WaveState& s);

struct EvolveResult {
  WaveState final_state;
  std::vector<DiagnosticsRecord> trace;
  bool blew_up = false;
  double failure_time = 0.0;
};

using StateObserver = std::function<void(const WaveState&)>;

// Steps from s0.time to t_end with a final partial step landing exactly on
// t_end. Diagnostics are sampled every sample_every steps and at both
// endpoints; the observer, when set, fires at the same instants. A blow-up
// (non-finite samples, or E > 1e6) stops the run and is reported in the
// result together with the last good state.
EvolveResult evolve(const WaveState& s0, double t_end, double dt,
                    int sample_every, double c_cfl = 1.0,
                    const StateObserver& observer = {});

// Header: time,hamiltonian,energy_E,functional_B,mean_eta,mean_vel,l2_eta,l2_vel
void write_diagnostics_csv(std::ostream& os,
                           std::span<const DiagnosticsRecord> trace);

} // namespace wb
