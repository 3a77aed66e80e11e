#include "dressline/dressed_dynamics.hpp"

#include <cmath>

namespace dressline {
namespace {

constexpr complex I{0.0, 1.0};

complex dressed_root_offset(const LevelScheme& scheme, double G, double Omega) {
  const double gamma = scheme.gamma_n() - scheme.gamma_m();
  const complex half_detuning = 0.5 * complex(Omega, -gamma);
  return std::sqrt(G * G + half_detuning * half_detuning);
}

}  // namespace

DressedPair dressed_exponents(const LevelScheme& scheme, const DriveField& drive) {
  DressedPair pair{};
  pair.Gamma = scheme.gamma_m() + scheme.gamma_n();
  pair.gamma_diff = scheme.gamma_n() - scheme.gamma_m();
  pair.gamma_m = scheme.gamma_m();
  pair.G = drive.G();
  pair.Omega = drive.Omega();

  const complex centre = 0.5 * complex(pair.Gamma, pair.Omega);
  const complex S = dressed_root_offset(scheme, drive.G(), drive.Omega());
  pair.alpha1 = centre + I * S;
  pair.alpha2 = centre - I * S;

  const double scale = pair.Gamma + std::abs(pair.Omega) + pair.G;
  const complex split = pair.alpha1 - pair.alpha2;
  pair.confluent = std::abs(split) < confluent_threshold * scale;
  if (pair.confluent) {
    // Finite parts of the diverging A1, A2; amplitude_n uses the confluent form.
    pair.A1 = 0.5;
    pair.A2 = 0.5;
  } else {
    pair.A1 = (pair.alpha1 - pair.gamma_m) / split;
    pair.A2 = (pair.gamma_m - pair.alpha2) / split;
  }

  if (drive.G() > 0.0 || drive.Omega() != 0.0) pair.memory = memory_factors(drive);
  return pair;
}

complex amplitude_m(const DressedPair& pair, double t) {
  if (t < 0.0) throw DomainError("amplitude_m: t must be >= 0");
  if (pair.G == 0.0) return 0.0;
  if (pair.confluent) {
    const complex a = pair.alpha_mean();
    return I * pair.G * t * std::exp(-a * t);
  }
  return I * pair.G * (std::exp(-pair.alpha2 * t) - std::exp(-pair.alpha1 * t)) /
         (pair.alpha1 - pair.alpha2);
}

complex amplitude_n(const DressedPair& pair, double t) {
  if (t < 0.0) throw DomainError("amplitude_n: t must be >= 0");
  const complex phase = std::exp(I * pair.Omega * t);
  if (pair.confluent) {
    const complex a = pair.alpha_mean();
    return std::exp(-a * t) * (1.0 - (a - pair.gamma_m) * t) * phase;
  }
  return (pair.A1 * std::exp(-pair.alpha1 * t) + pair.A2 * std::exp(-pair.alpha2 * t)) * phase;
}

MemoryFactors memory_factors(const DriveField& drive) {
  const double G = drive.G();
  const double Omega = drive.Omega();
  if (G == 0.0 && Omega == 0.0) {
    throw DomainError("memory factors are undefined for G = 0 and Omega = 0");
  }
  const double ratio = Omega / std::hypot(Omega, 2.0 * G);
  return {0.5 * (1.0 + ratio), 0.5 * (1.0 - ratio)};
}

MemoryFactors frequency_slopes(const LevelScheme& scheme, const DriveField& drive) {
  const double gamma = scheme.gamma_n() - scheme.gamma_m();
  const complex S = dressed_root_offset(scheme, drive.G(), drive.Omega());
  if (S == complex(0.0)) throw RegimeError("frequency_slopes: confluent exponents");
  // d alpha_{1,2}/d Omega = i/2 +- i (Omega - i gamma) / (4 S)
  const double slope = std::real(complex(drive.Omega(), -gamma) / (4.0 * S));
  return {0.5 + slope, 0.5 - slope};
}

bool doublet_resolved(const DressedPair& pair, double gamma_l) noexcept {
  const double separation = std::abs(pair.alpha1.imag() - pair.alpha2.imag());
  return separation > pair.alpha1.real() + pair.alpha2.real() + 2.0 * gamma_l;
}

}  // namespace dressline
