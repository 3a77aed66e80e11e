#include "dressline/doppler_average.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dressline/faddeeva.hpp"

namespace dressline {
namespace {

constexpr complex I{0.0, 1.0};

void require_unit_interval(double M) {
  if (!(M >= 0.0 && M <= 1.0)) throw DomainError("memory weight must lie in [0, 1]");
}

}  // namespace

EffectiveWavevector effective_q(double k, double k_mu, double theta, double M, ProcessKind kind) {
  if (!(k >= 0.0) || !(k_mu >= 0.0)) throw DomainError("effective_q: wave vectors must be >= 0");
  if (!(theta >= 0.0 && theta <= constants::pi)) throw DomainError("effective_q: theta must lie in [0, pi]");
  require_unit_interval(M);
  const double angle = process_signs(kind).product() < 0 ? constants::pi - theta : theta;
  const double s = std::sin(0.5 * angle);
  const double d = k_mu - M * k;
  return {std::sqrt(d * d + 4.0 * M * k * k_mu * s * s), theta, M};
}

VoigtParameters voigt_parameters(complex c, double doppler_scale) {
  if (!(doppler_scale > 0.0)) throw DomainError("voigt_parameters: Doppler scale must be > 0");
  return {c / doppler_scale, doppler_scale};
}

complex doppler_averaged_resonance(complex c, double doppler_scale) {
  if (c.real() <= 0.0) throw DomainError("doppler_averaged_resonance: natural half-width must be > 0");
  if (doppler_scale < 0.0) throw DomainError("doppler_averaged_resonance: Doppler scale must be >= 0");
  if (doppler_scale == 0.0) return 1.0 / c;
  if (std::abs(c) > 1e12 * doppler_scale) {
    // erfcx(p) ~ (1 - 1/(2p^2) + 3/(4p^4)) / (sqrt(pi) p)
    const complex r = doppler_scale * doppler_scale / (c * c);
    return (1.0 - r * (0.5 - 0.75 * r)) / c;
  }
  const VoigtParameters v = voigt_parameters(c, doppler_scale);
  return constants::sqrt_pi / v.doppler_scale * erfcx_complex(v.p);
}

DopplerScales doppler_scales(const DriveField& drive, const ProbeField& probe, const ThermalEnsemble& ensemble) {
  return {drive.k() * ensemble.vbar(), probe.k_mu() * ensemble.vbar()};
}

RegimeRatios regime_ratios(const LevelScheme& scheme, const DriveField& drive, const ThermalEnsemble& ensemble) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double G = drive.G();
  const double Omega = drive.Omega();
  const double kv = drive.k() * ensemble.vbar();
  const double gamma = scheme.gamma_n() - scheme.gamma_m();
  const double detuning = std::hypot(Omega, gamma);
  const double Gamma = scheme.gamma_m() + scheme.gamma_n();

  RegimeRatios r{};
  r.weak_field = detuning > 0.0 ? G / detuning : inf;
  r.detuning_over_doppler = kv > 0.0 ? std::abs(Omega) / kv : inf;
  r.field_over_doppler = kv > 0.0 ? G / kv : inf;
  r.triplet = G / std::max({std::abs(Omega), kv, Gamma, scheme.gamma_l()});
  return r;
}

WeakDoubletTerms doppler_weak_terms(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                    const ThermalEnsemble& ensemble, double Omega_mu, ProcessKind kind) {
  const auto [Omega, Om] = apply_process_signs(kind, drive.Omega(), Omega_mu);
  if (Omega == 0.0) throw RegimeError("doppler_weak_doublet: requires Omega != 0 (|Omega| >> k vbar)");
  const double GG = drive.G() * probe.G_mu();
  const double prefactor = GG * GG / (Omega * Omega);

  const double vbar = ensemble.vbar();
  const double stepwise_scale = probe.k_mu() * vbar;
  const double raman_scale = effective_q(drive.k(), probe.k_mu(), probe.theta(), 1.0, kind).q * vbar;

  const complex stepwise = doppler_averaged_resonance(complex(scheme.gamma_l() + scheme.gamma_m(), Om),
                                                      stepwise_scale) / scheme.gamma_m();
  const complex raman = doppler_averaged_resonance(complex(scheme.gamma_l() + scheme.gamma_n(), Om - Omega),
                                                   raman_scale) / scheme.gamma_n();
  return {prefactor * stepwise.real(), prefactor * raman.real()};
}

double doppler_weak_doublet(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                            const ThermalEnsemble& ensemble, double Omega_mu, ProcessKind kind) {
  return doppler_weak_terms(scheme, drive, probe, ensemble, Omega_mu, kind).total();
}

WeakDoubletTerms doppler_weak_gaussian(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                       const ThermalEnsemble& ensemble, double Omega_mu, ProcessKind kind) {
  const auto [Omega, Om] = apply_process_signs(kind, drive.Omega(), Omega_mu);
  if (Omega == 0.0) throw RegimeError("doppler_weak_gaussian: requires Omega != 0");
  const double vbar = ensemble.vbar();
  const double stepwise_scale = probe.k_mu() * vbar;
  const double raman_scale = effective_q(drive.k(), probe.k_mu(), probe.theta(), 1.0, kind).q * vbar;
  if (stepwise_scale == 0.0 || raman_scale == 0.0) {
    throw RegimeError("doppler_weak_gaussian: Gaussian form needs non-zero Doppler scales");
  }
  const double GG = drive.G() * probe.G_mu();
  const double prefactor = GG * GG / (Omega * Omega);
  const double xs = Om / stepwise_scale;
  const double xr = (Om - Omega) / raman_scale;
  return {prefactor * constants::sqrt_pi / (scheme.gamma_m() * stepwise_scale) * std::exp(-xs * xs),
          prefactor * constants::sqrt_pi / (scheme.gamma_n() * raman_scale) * std::exp(-xr * xr)};
}

StrongDoubletTerms doppler_strong_terms(const LevelScheme& scheme, const DriveField& drive,
                                        const ProbeField& probe, const ThermalEnsemble& ensemble,
                                        double Omega_mu, ProcessKind kind) {
  const auto [Omega, Om] = apply_process_signs(kind, drive.Omega(), Omega_mu);
  const double G = drive.G();
  if (G == 0.0 || probe.G_mu() == 0.0) return {0.0, 0.0};
  const DriveField signed_drive = drive.with_Omega(Omega);
  const DressedPair pair = dressed_exponents(scheme, signed_drive);
  const MemoryFactors M = memory_factors(signed_drive);

  const double GG = G * probe.G_mu();
  const double prefactor = GG * GG / (Omega * Omega + 4.0 * G * G);
  const double vbar = ensemble.vbar();
  const double gl = scheme.gamma_l();

  auto term = [&](complex alpha, double memory) {
    const double scale = effective_q(drive.k(), probe.k_mu(), probe.theta(), memory, kind).q * vbar;
    const complex c = gl + std::conj(alpha) + I * Om;
    return prefactor * (doppler_averaged_resonance(c, scale) / alpha.real()).real();
  };
  return {term(pair.alpha1, M.M1), term(pair.alpha2, M.M2)};
}

double doppler_strong_doublet(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                              const ThermalEnsemble& ensemble, double Omega_mu, ProcessKind kind) {
  return doppler_strong_terms(scheme, drive, probe, ensemble, Omega_mu, kind).total();
}

TripletTerms fluorescence_triplet_terms(const LevelScheme& scheme, const DriveField& drive,
                                        const ThermalEnsemble& ensemble, double theta, double Omega_mu) {
  if (!(theta >= 0.0 && theta <= constants::pi)) throw DomainError("triplet: theta must lie in [0, pi]");
  const double Gamma = scheme.gamma_m() + scheme.gamma_n();
  const double scale = 2.0 * drive.k() * ensemble.vbar() * std::sin(0.5 * theta);
  const double x = Omega_mu - drive.Omega();
  const double G2 = 2.0 * drive.G();
  // Each Voigt component has area pi; weights 1 + 2 + 1.
  const double norm = 1.0 / (4.0 * constants::pi);
  auto component = [&](double shift) {
    return norm * doppler_averaged_resonance(complex(Gamma, x - shift), scale).real();
  };
  return {component(-G2), 2.0 * component(0.0), component(G2)};
}

double fluorescence_triplet(const LevelScheme& scheme, const DriveField& drive, const ThermalEnsemble& ensemble,
                            double theta, double Omega_mu) {
  return fluorescence_triplet_terms(scheme, drive, ensemble, theta, Omega_mu).total();
}

std::array<ResonanceDescriptor, 4> triplet_resonance_positions(const DressedPair& pair, double k, double k_mu,
                                                               double theta) {
  const double q = effective_q(k, k_mu, theta, 1.0).q;
  return {{
      {pair.Omega, 2.0 * pair.alpha1.real(), DopplerVector::DriveProbeDifference, q},
      {pair.Omega, 2.0 * pair.alpha2.real(), DopplerVector::DriveProbeDifference, q},
      {2.0 * pair.alpha1.imag(), pair.Gamma, DopplerVector::Probe, k_mu},
      {2.0 * pair.alpha2.imag(), pair.Gamma, DopplerVector::Probe, k_mu},
  }};
}

}  // namespace dressline
