#include "wb/evolution.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>

#include "wb/fourier.hpp"
#include "wb/kernels.hpp"
#include "wb/multiplier.hpp"

namespace wb {

namespace {

constexpr double energy_abort_threshold = 1e6;

void require_valid(const WaveState& s) {
  require_same_grid(s.eta, s.vel);
  if (!all_finite(s.eta) || !all_finite(s.vel)) throw BlowUpError(s.time);
}

WaveState stage(const WaveState& s, const std::pair<RealField, RealField>& k,
                double dt) {
  WaveState out;
  out.eta = RealField(s.eta.grid);
  out.vel = RealField(s.vel.grid);
  kernels::axpby(1.0, s.eta.span(), dt, k.first.span(), out.eta.span());
  kernels::axpby(1.0, s.vel.span(), dt, k.second.span(), out.vel.span());
  out.time = s.time + dt;
  return out;
}

} // namespace

double dispersion_omega(double k) {
  return std::sqrt(std::abs(k) * std::abs(std::tanh(k)));
}

double phase_speed(double k) {
  if (k == 0.0) return 1.0;
  return std::sqrt(std::tanh(std::abs(k)) / std::abs(k));
}

std::pair<RealField, RealField> rhs(const WaveState& s) {
  require_valid(s);
  const Grid& g = *s.eta.grid;
  const int n = g.n;

  RealField eta_v(s.eta.grid), v_sq(s.eta.grid);
  kernels::multiply(s.eta.span(), s.vel.span(), eta_v.span());
  kernels::multiply(s.vel.span(), s.vel.span(), v_sq.span());

  auto spec_eta = forward_transform(s.eta);
  auto spec_v = forward_transform(s.vel);
  auto spec_ev = forward_transform(eta_v);
  auto spec_vv = forward_transform(v_sq);
  dealias_spectrum(spec_ev, g);
  dealias_spectrum(spec_vv, g);

  std::vector<std::complex<double>> deta_hat(n), dvel_hat(n);
  const std::complex<double> mi(0.0, -1.0);
  for (int j = 0; j < n; ++j) {
    // both ik and tanh(k) are odd, so their folded Nyquist action vanishes
    if (j == n / 2) {
      deta_hat[j] = 0.0;
      dvel_hat[j] = 0.0;
      continue;
    }
    const double k = g.wavenumber[j];
    const double th = std::tanh(k);
    deta_hat[j] = mi * (k * spec_v[j] + th * spec_ev[j]);
    dvel_hat[j] = mi * th * (spec_eta[j] + 0.5 * spec_vv[j]);
  }
  return {backward_transform(deta_hat, s.eta.grid),
          backward_transform(dvel_hat, s.eta.grid)};
}

double dt_max(const Grid& grid, double c_cfl) {
  return c_cfl / std::sqrt(grid.k_max());
}

WaveState step_rk4(const WaveState& s, double dt, double c_cfl) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_rk4: dt must be positive");
  const double bound = dt_max(*s.eta.grid, c_cfl);
  if (dt > bound * (1.0 + 1e-12))
    throw std::invalid_argument("step_rk4: dt = " + std::to_string(dt) +
                                " exceeds the stability bound " +
                                std::to_string(bound));

  const auto k1 = rhs(s);
  const auto k2 = rhs(stage(s, k1, 0.5 * dt));
  const auto k3 = rhs(stage(s, k2, 0.5 * dt));
  const auto k4 = rhs(stage(s, k3, dt));

  WaveState out;
  out.eta = RealField(s.eta.grid);
  out.vel = RealField(s.vel.grid);
  kernels::rk4_combine(s.eta.span(), k1.first.span(), k2.first.span(),
                       k3.first.span(), k4.first.span(), dt, out.eta.span());
  kernels::rk4_combine(s.vel.span(), k1.second.span(), k2.second.span(),
                       k3.second.span(), k4.second.span(), dt, out.vel.span());
  out.time = s.time + dt;
  if (!all_finite(out.eta) || !all_finite(out.vel)) throw BlowUpError(s.time);
  return out;
}

double hamiltonian(const WaveState& s) {
  static const MultiplierSymbol kinv = symbol_Kinv();
  const RealField w = apply_multiplier(kinv, s.vel);
  const RealField v2 = pointwise_product(s.vel, s.vel);
  return 0.5 * (inner(s.eta, s.eta) + inner(s.vel, w) + inner(s.eta, v2));
}

double functional_B(const WaveState& s) {
  static const MultiplierSymbol absk = symbol_absk();
  static const MultiplierSymbol absk_sq{
      "absk2", [](double k) { return std::complex<double>(k * k, 0.0); }};
  return 0.5 * (inner(s.eta, apply_multiplier(absk, s.eta)) +
                inner(s.vel, apply_multiplier(absk_sq, s.vel)));
}

double energy_E(const WaveState& s) {
  const double sq = 0.5 * inner(s.eta, s.eta) + 0.5 * inner(s.vel, s.vel) +
                    functional_B(s);
  return std::sqrt(std::max(sq, 0.0));
}

std::pair<double, double> means(const WaveState& s) {
  return {mean(s.eta), mean(s.vel)};
}

DiagnosticsRecord diagnose(const WaveState& s) {
  DiagnosticsRecord r;
  r.time = s.time;
  r.hamiltonian = hamiltonian(s);
  r.functional_B = functional_B(s);
  r.l2_eta = l2_norm(s.eta);
  r.l2_vel = l2_norm(s.vel);
  const double sq =
      0.5 * r.l2_eta * r.l2_eta + 0.5 * r.l2_vel * r.l2_vel + r.functional_B;
  r.energy_E = std::sqrt(std::max(sq, 0.0));
  std::tie(r.mean_eta, r.mean_vel) = means(s);
  return r;
}

EvolveResult evolve(const WaveState& s0, double t_end, double dt,
                    int sample_every, double c_cfl,
                    const StateObserver& observer) {
  if (t_end < s0.time) throw std::invalid_argument("evolve: t_end before initial time");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (sample_every < 1) sample_every = 1;

  EvolveResult res;
  WaveState current = s0;

  auto sample = [&](const WaveState& s) -> bool {
    const DiagnosticsRecord rec = diagnose(s);
    res.trace.push_back(rec);
    if (observer) observer(s);
    return rec.energy_E <= energy_abort_threshold;
  };

  if (!sample(current)) {
    res.final_state = current;
    res.blew_up = true;
    res.failure_time = current.time;
    return res;
  }

  const double span = t_end - s0.time;
  const long long whole = static_cast<long long>(std::floor(span / dt));
  const double remainder = span - static_cast<double>(whole) * dt;

  long long step_count = 0;
  bool sampled_last = true;
  auto advance = [&](double h) -> bool {
    WaveState next;
    try {
      next = step_rk4(current, h, c_cfl);
    } catch (const BlowUpError& e) {
      res.blew_up = true;
      res.failure_time = e.time;
      return false;
    }
    current = std::move(next);
    ++step_count;
    sampled_last = false;
    if (step_count % sample_every == 0) {
      sampled_last = true;
      if (!sample(current)) {
        res.blew_up = true;
        res.failure_time = current.time;
        return false;
      }
    }
    return true;
  };

  for (long long i = 0; i < whole; ++i) {
    if (!advance(dt)) {
      res.final_state = current;
      return res;
    }
  }
  if (!res.blew_up && remainder > 1e-12 * dt) {
    if (!advance(remainder)) {
      res.final_state = current;
      return res;
    }
  }
  current.time = t_end;
  if (!sampled_last && !sample(current)) {
    res.blew_up = true;
    res.failure_time = current.time;
  }
  res.trace.back().time = t_end;
  res.final_state = current;
  return res;
}

void write_diagnostics_csv(std::ostream& os,
                           std::span<const DiagnosticsRecord> trace) {
  os << "time,hamiltonian,energy_E,functional_B,mean_eta,mean_vel,l2_eta,l2_vel\n";
  char line[256];
  for (const auto& r : trace) {
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.time,
                  r.hamiltonian, r.energy_E, r.functional_B, r.mean_eta,
                  r.mean_vel, r.l2_eta, r.l2_vel);
    os << line;
  }
}

} // namespace wb
