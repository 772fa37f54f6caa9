#include "wb/experiments.hpp"

#include <gsl/gsl_interp.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wb/errors.hpp"
#include "wb/fourier.hpp"
#include "wb/kernels.hpp"
#include "wb/multiplier.hpp"

namespace wb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// natural cubic spline through (xs, ys), evaluated at x; zero outside the
// sample support
class CubicInterpolant {
 public:
  CubicInterpolant(const std::vector<double>& xs, const std::vector<double>& ys)
      : acc_(gsl_interp_accel_alloc()),
        spline_(gsl_spline_alloc(gsl_interp_cspline, xs.size())),
        lo_(xs.front()),
        hi_(xs.back()) {
    gsl_spline_init(spline_, xs.data(), ys.data(), xs.size());
  }
  ~CubicInterpolant() {
    gsl_spline_free(spline_);
    gsl_interp_accel_free(acc_);
  }
  CubicInterpolant(const CubicInterpolant&) = delete;
  CubicInterpolant& operator=(const CubicInterpolant&) = delete;

  double operator()(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    return gsl_spline_eval(spline_, x, acc_);
  }

 private:
  gsl_interp_accel* acc_;
  gsl_spline* spline_;
  double lo_, hi_;
};

double ls_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  double mt = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (t[i] - mt) * (y[i] - my);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return num / den;
}

// window half-widths from the tail-excision rule: walk outward from the peak
// while the profile keeps decaying; the edge is the first sample that is both
// below 1e-4 * amplitude and no longer decreasing. A clean solitary wave
// decays monotonically into the round-off floor, so nothing of substance is
// clipped; a dispersive tail trips the rule at its first oscillation.
int excision_half_width(const RealField& eta, int j_peak) {
  const int n = eta.size();
  const double thr = 1e-4 * eta.values[j_peak];
  int best = n / 2 - 1;
  for (int side = 0; side < 2; ++side) {
    const int dir = side == 0 ? 1 : -1;
    double prev = std::abs(eta.values[j_peak]);
    for (int o = 1; o <= n / 2 - 1; ++o) {
      const int j = ((j_peak + dir * o) % n + n) % n;
      const double cur = std::abs(eta.values[j]);
      if (cur < thr && cur >= prev) {
        best = std::min(best, o - 1);
        break;
      }
      prev = cur;
    }
  }
  return std::max(best, 1);
}

} // namespace

double relative_difference(const RealField& eta1, const RealField& eta2) {
  require_same_grid(eta1, eta2);
  const double denom = l2_norm(eta1);
  if (denom == 0.0)
    throw std::invalid_argument("relative_difference: first argument is zero");
  return l2_norm(sub(eta1, eta2)) / denom;
}

void validate_reference(const ReferenceWave& ref) {
  const std::size_t n = ref.x.size();
  if (n < 16 || ref.eta0.size() != n || ref.u1.size() != n || ref.u2.size() != n)
    throw IoError("reference: needs >= 16 rows with four columns each");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(ref.x[i]) || !std::isfinite(ref.eta0[i]) ||
        !std::isfinite(ref.u1[i]) || !std::isfinite(ref.u2[i]))
      throw IoError("reference: non-finite sample at row " + std::to_string(i));
    if (i > 0 && !(ref.x[i] > ref.x[i - 1]))
      throw IoError("reference: abscissa must be strictly increasing (row " +
                    std::to_string(i) + ")");
  }
  double amax = 0.0;
  for (double v : ref.eta0) amax = std::max(amax, std::abs(v));
  if (std::abs(ref.eta0.front()) >= 1e-6 * amax ||
      std::abs(ref.eta0.back()) >= 1e-6 * amax)
    throw IoError("reference: eta0 does not decay at the endpoints "
                  "(|eta0| must fall below 1e-6 of its maximum)");
  if (!std::isfinite(ref.c) || ref.c == 0.0)
    throw IoError("reference: missing or invalid wave speed c");
}

ReferenceWave load_reference(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("reference: cannot open " + path.string());

  ReferenceWave ref;
  bool inline_c = false;
  std::string line;
  bool header_seen = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("c=");
      if (pos != std::string::npos) {
        try {
          ref.c = std::stod(t.substr(pos + 2));
          inline_c = true;
        } catch (const std::exception&) {
          throw IoError("reference: malformed inline speed comment: " + t);
        }
      }
      continue;
    }
    if (!header_seen) {
      std::string h = t;
      h.erase(std::remove_if(h.begin(), h.end(),
                             [](unsigned char ch) { return std::isspace(ch); }),
              h.end());
      if (h != "x,eta0,u1,u2")
        throw IoError("reference: expected header 'x,eta0,u1,u2', got '" + t + "'");
      header_seen = true;
      continue;
    }
    std::istringstream ss(t);
    std::string cell;
    double vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, cell, ','))
        throw IoError("reference: row " + std::to_string(row) + " has fewer than 4 columns");
      try {
        vals[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError("reference: unparsable number '" + cell + "' at row " +
                      std::to_string(row));
      }
    }
    if (std::getline(ss, cell, ','))
      throw IoError("reference: row " + std::to_string(row) + " has more than 4 columns");
    ref.x.push_back(vals[0]);
    ref.eta0.push_back(vals[1]);
    ref.u1.push_back(vals[2]);
    ref.u2.push_back(vals[3]);
  }
  if (!header_seen) throw IoError("reference: empty file " + path.string());

  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".json");
  if (std::filesystem::exists(sidecar)) {
    std::ifstream js(sidecar);
    try {
      const auto j = nlohmann::json::parse(js);
      ref.c = j.at("c").get<double>();
    } catch (const std::exception& e) {
      throw IoError("reference: bad sidecar " + sidecar.string() + ": " + e.what());
    }
  } else if (!inline_c) {
    throw IoError("reference: no speed given (sidecar " + sidecar.string() +
                  " or '# c=' comment required)");
  }

  validate_reference(ref);
  return ref;
}

WaveState build_initial(const ReferenceWave& ref, const GridPtr& grid) {
  validate_reference(ref);
  const double half = 0.5 * grid->length;
  const double tol = 1e-9 * grid->length;
  if (ref.x.front() < -half - tol || ref.x.back() > half + tol)
    throw std::invalid_argument(
        "build_initial: reference support exceeds the grid domain");

  auto resample = [&](const std::vector<double>& ys) {
    CubicInterpolant spline(ref.x, ys);
    RealField f(grid);
    for (int j = 0; j < grid->n; ++j) f.values[j] = spline(grid->node[j]);
    return f;
  };

  WaveState s;
  s.eta = resample(ref.eta0);
  const RealField u1 = resample(ref.u1);
  const RealField u2 = resample(ref.u2);

  static const MultiplierSymbol deriv = symbol_deriv();
  static const MultiplierSymbol K = symbol_K();
  const RealField slope = apply_multiplier(deriv, s.eta);
  const RealField prod = dealias(pointwise_product(u2, slope));
  s.vel = apply_multiplier(K, add(u1, prod));
  s.time = 0.0;
  return s;
}

ReferenceWave reference_from_soliton(const SolitonResult& sol) {
  static const MultiplierSymbol kinv = symbol_Kinv();
  const RealField u1 = apply_multiplier(kinv, sol.vel);
  ReferenceWave ref;
  const int n = sol.eta.size();
  ref.x.assign(sol.eta.grid->node.begin(), sol.eta.grid->node.end());
  ref.eta0 = sol.eta.values;
  ref.u1 = u1.values;
  ref.u2.assign(n, 0.0);
  ref.c = sol.c;
  return ref;
}

double locate_peak(const RealField& eta) {
  const int n = eta.size();
  int j_peak = 0;
  for (int j = 1; j < n; ++j)
    if (eta.values[j] > eta.values[j_peak]) j_peak = j;
  const double peak = eta.values[j_peak];
  for (int j = 0; j < n; ++j) {
    const int dist = std::min(std::abs(j - j_peak), n - std::abs(j - j_peak));
    if (dist > 1 && eta.values[j] == peak)
      throw std::runtime_error("locate_peak: multiple equal maxima");
  }

  const int W = std::min(std::max(n / 16, 4), n / 2 - 1);
  double wsum = 0.0, xsum = 0.0;
  const double h = eta.grid->spacing();
  for (int o = -W; o <= W; ++o) {
    const int j = ((j_peak + o) % n + n) % n;
    double w = std::max(eta.values[j], 0.0);
    w = w * w;       // ^2
    w = w * w;       // ^4
    w = w * w;       // ^8
    wsum += w;
    xsum += w * (o * h);
  }
  const double x = eta.grid->node[j_peak] + xsum / wsum;
  return std::remainder(x, eta.grid->length);
}

ExperimentResult soliton_evolution_experiment(const ReferenceWave& ref,
                                              const GridPtr& grid,
                                              double t_end, double dt,
                                              int sample_every) {
  if (t_end < 0.0)
    throw std::invalid_argument("soliton_evolution_experiment: t_end >= 0 required");

  ExperimentResult out;
  WaveState s0 = build_initial(ref, grid);

  if (t_end == 0.0) {
    out.trace.push_back(diagnose(s0));
    out.eta_final = s0.eta;
    out.report.c_fitted = ref.c;
  } else {
    double prev_x = 0.0, unwrapped = 0.0;
    bool first = true;
    auto observer = [&](const WaveState& s) {
      const double x = locate_peak(s.eta);
      if (first) {
        unwrapped = x;
        first = false;
      } else {
        double delta = x - prev_x;
        delta -= grid->length * std::round(delta / grid->length);
        unwrapped += delta;
      }
      prev_x = x;
      out.peak_time.push_back(s.time);
      out.peak_position.push_back(unwrapped);
    };
    EvolveResult ev = evolve(s0, t_end, dt, sample_every, 1.0, observer);
    if (ev.blew_up) throw BlowUpError(ev.failure_time);
    out.trace = std::move(ev.trace);
    out.eta_final = std::move(ev.final_state.eta);

    // speed of the leading wave: least squares on the peak trajectory over
    // the last quarter of the run (early times carry the shedding transient)
    std::vector<double> tf, xf;
    for (std::size_t i = 0; i < out.peak_time.size(); ++i) {
      if (out.peak_time[i] >= 0.75 * t_end) {
        tf.push_back(out.peak_time[i]);
        xf.push_back(out.peak_position[i]);
      }
    }
    if (tf.size() < 2) {
      tf = out.peak_time;
      xf = out.peak_position;
    }
    if (tf.size() < 2)
      throw std::runtime_error("soliton_evolution_experiment: too few peak samples to fit a speed");
    out.report.c_fitted = ls_slope(tf, xf);
  }

  // excise the dispersive tail around the leading wave
  const RealField& eta = out.eta_final;
  const int n = grid->n;
  int j_peak = 0;
  for (int j = 1; j < n; ++j)
    if (eta.values[j] > eta.values[j_peak]) j_peak = j;
  const int w = excision_half_width(eta, j_peak);

  out.eta_excised = RealField(grid);
  for (int o = -w; o <= w; ++o) {
    const int j = ((j_peak + o) % n + n) % n;
    out.eta_excised.values[j] = eta.values[j];
  }
  out.report.tail_mass = l2_norm(sub(eta, out.eta_excised));

  // solitary wave at the fitted speed, aligned with the leading wave and
  // windowed identically
  SolitonResult sol = petviashvili_solve(out.report.c_fitted, grid);
  if (!sol.converged)
    throw SolveError("soliton_evolution_experiment: embedded solitary solve did not converge");
  const double x_c = locate_peak(out.eta_excised);
  RealField aligned = shift_field(sol.eta, x_c);
  out.eta_soliton = RealField(grid);
  for (int o = -w; o <= w; ++o) {
    const int j = ((j_peak + o) % n + n) % n;
    out.eta_soliton.values[j] = aligned.values[j];
  }

  out.report.d = relative_difference(out.eta_soliton, out.eta_excised);
  out.report.t = t_end;
  return out;
}

double apriori_blowup_time(double E0, double C) {
  return std::log1p(1.0 / E0) / C;
}

double apriori_bound(double E0, double C, double t) {
  if (!(E0 > 0.0) || !(C > 0.0))
    throw std::invalid_argument("apriori_bound: E0 and C must be positive");
  const double growth = std::exp(C * t);
  const double den = 1.0 - E0 * (growth - 1.0);
  if (!(den > 0.0))
    throw std::domain_error("apriori_bound: t is at or past the blow-up time "
                            + std::to_string(apriori_blowup_time(E0, C)));
  return E0 * growth / den;
}

GrowthCurve continuous_dependence_test(const WaveState& s0, double eps,
                                       double t_end, double dt, uint64_t seed,
                                       int sample_every) {
  if (!(eps > 0.0))
    throw std::invalid_argument("continuous_dependence_test: eps must be positive");
  if (sample_every < 1) sample_every = 1;

  const GridPtr grid = s0.eta.grid;
  const int n = grid->n;

  // smooth seeded perturbation: a handful of low modes under a Gaussian
  // envelope, then rescaled to E-norm eps
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m_cut = std::min(n / 6, 32);
  auto smooth_noise = [&]() {
    std::vector<double> ac(m_cut + 1), as(m_cut + 1);
    for (int m = 1; m <= m_cut; ++m) {
      const double env = std::exp(-std::pow(m / 8.0, 2));
      ac[m] = gauss(rng) * env;
      as[m] = gauss(rng) * env;
    }
    RealField f(grid);
    const double k0 = 2.0 * std::numbers::pi / grid->length;
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int m = 1; m <= m_cut; ++m)
        acc += ac[m] * std::cos(m * k0 * grid->node[j]) +
               as[m] * std::sin(m * k0 * grid->node[j]);
      f.values[j] = acc;
    }
    return f;
  };

  WaveState delta;
  delta.eta = smooth_noise();
  delta.vel = smooth_noise();
  const double e0 = energy_E(delta);
  if (e0 == 0.0)
    throw std::invalid_argument("continuous_dependence_test: perturbation vanished");
  const double scale = eps / e0;

  WaveState a = s0;
  WaveState b = s0;
  kernels::axpby(1.0, s0.eta.span(), scale, delta.eta.span(), b.eta.span());
  kernels::axpby(1.0, s0.vel.span(), scale, delta.vel.span(), b.vel.span());

  GrowthCurve curve;
  auto record = [&](double t) {
    WaveState diff;
    diff.eta = sub(a.eta, b.eta);
    diff.vel = sub(a.vel, b.vel);
    curve.time.push_back(t);
    curve.ratio.push_back(energy_E(diff) / eps);
  };

  record(0.0);
  const long long whole = static_cast<long long>(std::floor(t_end / dt));
  const double remainder = t_end - static_cast<double>(whole) * dt;
  long long step = 0;
  auto advance = [&](double h) {
    a = step_rk4(a, h);
    b = step_rk4(b, h);
    ++step;
    if (step % sample_every == 0) record(a.time);
  };
  for (long long i = 0; i < whole; ++i) advance(dt);
  if (remainder > 1e-12 * dt) advance(remainder);
  if (curve.time.back() != a.time) record(a.time);

  std::vector<double> logs(curve.ratio.size());
  for (std::size_t i = 0; i < curve.ratio.size(); ++i)
    logs[i] = std::log(curve.ratio[i]);
  curve.c_hat = ls_slope(curve.time, logs);

  curve.bound_ok = true;
  for (std::size_t i = 0; i < curve.time.size(); ++i) {
    if (curve.ratio[i] > 1.1 * std::exp(curve.c_hat * curve.time[i])) {
      curve.bound_ok = false;
      break;
    }
  }
  return curve;
}

} // namespace wb
