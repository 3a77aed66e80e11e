#include "dressline/stationary_spectrum.hpp"

#include <cmath>

#include "dressline/parallel.hpp"

namespace dressline {
namespace {

constexpr complex I{0.0, 1.0};

// Limit of the general expression as alpha1 -> alpha2 = a: the mixed second
// difference becomes d^2/(dx dy*) of 1/((x + y*)(c + y*)) at x = a, y = a.
double w_mu_confluent(const DressedPair& pair, double gamma_l, double G_mu, double Omega_mu) {
  const complex a = pair.alpha_mean();
  const complex c = complex(gamma_l, Omega_mu) + std::conj(a);
  const double two_re = 2.0 * a.real();
  const complex bracket = 2.0 / (two_re * two_re * two_re * c) + 1.0 / (two_re * two_re * c * c);
  const double GG = pair.G * G_mu;
  return 2.0 * GG * GG * bracket.real();
}

}  // namespace

double w_mu_from_pair(const DressedPair& pair, double gamma_l, double G_mu, double Omega_mu) {
  if (pair.G == 0.0 || G_mu == 0.0) return 0.0;
  if (pair.confluent) return w_mu_confluent(pair, gamma_l, G_mu, Omega_mu);

  const complex a1 = pair.alpha1;
  const complex a2 = pair.alpha2;
  const complex a1c = std::conj(a1);
  const complex a2c = std::conj(a2);
  const complex term1 = (1.0 / (a1 + a1c) - 1.0 / (a2 + a1c)) / (gamma_l + a1c + I * Omega_mu);
  const complex term2 = (1.0 / (a2 + a2c) - 1.0 / (a1 + a2c)) / (gamma_l + a2c + I * Omega_mu);
  const double GG = pair.G * G_mu;
  return 2.0 * GG * GG / std::norm(a1 - a2) * (term1 + term2).real();
}

double w_mu_exact(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                  double Omega_mu, ProcessKind kind) {
  const auto [Omega, Omega_mu_signed] = apply_process_signs(kind, drive.Omega(), Omega_mu);
  const DressedPair pair = dressed_exponents(scheme, drive.with_Omega(Omega));
  return w_mu_from_pair(pair, scheme.gamma_l(), probe.G_mu(), Omega_mu_signed);
}

WeakFieldResult w_mu_weak(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                          double Omega_mu, bool include_interference, ProcessKind kind) {
  const auto [Omega, Om] = apply_process_signs(kind, drive.Omega(), Omega_mu);
  const double gm = scheme.gamma_m();
  const double gn = scheme.gamma_n();
  const double gl = scheme.gamma_l();
  const double Gamma = gm + gn;
  const complex detuning(gn - gm, Omega);
  if (std::abs(detuning) == 0.0) {
    throw RegimeError("w_mu_weak: gamma_m = gamma_n with Omega = 0 makes the weak-field prefactor singular");
  }

  WeakFieldResult result{};
  result.regime_ratio = drive.G() / std::abs(detuning);
  WeakFieldBreakdown& b = result.breakdown;
  const double GG = drive.G() * probe.G_mu();
  b.prefactor = GG * GG / std::norm(detuning);

  const complex stepwise_denominator = complex(gl + gm, Om);
  const complex raman_denominator = complex(gl + gn, Om - Omega);
  b.stepwise_interference = include_interference ? -2.0 / complex(Gamma, Omega) / stepwise_denominator : 0.0;
  b.raman_interference = include_interference ? -2.0 / complex(Gamma, -Omega) / raman_denominator : 0.0;
  b.stepwise = (1.0 / gm) / stepwise_denominator + b.stepwise_interference;
  b.raman = (1.0 / gn) / raman_denominator + b.raman_interference;

  result.w = b.prefactor * (b.stepwise + b.raman).real();
  return result;
}

std::vector<SpectrumPoint> scan_spectrum(const LevelScheme& scheme, const DriveField& drive,
                                         const ProbeField& probe, std::span<const double> grid,
                                         ProcessKind kind, unsigned threads) {
  if (grid.empty()) throw DomainError("scan_spectrum: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("scan_spectrum: grid must be strictly increasing");
  }
  const auto [Omega, unused] = apply_process_signs(kind, drive.Omega(), 0.0);
  const int probe_sign = process_signs(kind).probe;
  const DressedPair pair = dressed_exponents(scheme, drive.with_Omega(Omega));

  std::vector<SpectrumPoint> out(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    out[i] = {grid[i], w_mu_from_pair(pair, scheme.gamma_l(), probe.G_mu(), probe_sign * grid[i])};
  });
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw DomainError("linear_grid: count must be >= 2");
  if (!(hi > lo)) throw DomainError("linear_grid: max must exceed min");
  std::vector<double> grid(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

}  // namespace dressline
