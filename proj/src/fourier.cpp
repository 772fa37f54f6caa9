#include "wb/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace wb {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are cached per size and created under a lock (the FFTW planner is not
// thread-safe); fftw_execute_dft on distinct arrays is safe to run
// concurrently, which keeps the transforms pure for callers.
const PlanPair& plans_for(int n) {
  static std::mutex mtx;
  static std::map<int, PlanPair> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(n), b(n);
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.forward = fftw_plan_dft_1d(n, ap, bp, FFTW_FORWARD, flags);
  p.backward = fftw_plan_dft_1d(n, ap, bp, FFTW_BACKWARD, flags);
  return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, std::vector<std::complex<double>>& in,
         std::vector<std::complex<double>>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

std::vector<std::complex<double>> forward_transform(const RealField& f) {
  const int n = f.size();
  if (n == 0 || static_cast<int>(f.values.size()) != n)
    throw std::invalid_argument("forward_transform: field size does not match grid");
  std::vector<std::complex<double>> in(n), out(n);
  for (int j = 0; j < n; ++j) in[j] = f.values[j];
  run(plans_for(n).forward, in, out);
  // The (-1)^m factor accounts for the grid origin at -L/2; with it the
  // coefficients refer to exp(i k x) directly.
  const double inv = 1.0 / n;
  for (int j = 0; j < n; ++j) out[j] *= (j % 2 == 0) ? inv : -inv;
  return out;
}

std::vector<std::complex<double>> synthesize_complex(
    std::span<const std::complex<double>> spectrum, const Grid& grid) {
  const int n = grid.n;
  if (static_cast<int>(spectrum.size()) != n)
    throw std::invalid_argument("backward_transform: spectrum size does not match grid");
  std::vector<std::complex<double>> in(n), out(n);
  for (int j = 0; j < n; ++j)
    in[j] = (j % 2 == 0) ? spectrum[j] : -spectrum[j];
  run(plans_for(n).backward, in, out);
  return out;
}

RealField backward_transform(std::span<const std::complex<double>> spectrum,
                             const GridPtr& grid) {
  auto full = synthesize_complex(spectrum, *grid);
  RealField f(grid);
  for (int j = 0; j < grid->n; ++j) f.values[j] = full[j].real();
  return f;
}

RealField shift_field(const RealField& f, double delta) {
  auto spec = forward_transform(f);
  const auto& k = f.grid->wavenumber;
  const int n = f.size();
  const std::complex<double> nyq = spec[n / 2];
  for (int j = 0; j < n; ++j)
    spec[j] *= std::polar(1.0, -k[j] * delta);
  // The shifted Nyquist cosine projects back onto the grid as
  // cos(k_N delta) * cos(k_N x); its sine partner vanishes at the nodes.
  spec[n / 2] = nyq.real() * std::cos(f.grid->k_max() * delta);
  return backward_transform(spec, f.grid);
}

} // namespace wb
