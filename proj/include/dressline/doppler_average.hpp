#pragma once

// Maxwell-averaged probe spectra.
//
// Every averaged term has the form Re <1/(c - i D t)> with t the velocity
// projection in units of vbar (density e^{-t^2}/sqrt(pi)), c = natural
// half-width + i detuning and D the Doppler scale (effective wave vector times
// vbar). Its closed form is sqrt(pi)/D * erfcx(c/D), with the D -> 0 limit 1/c.

#include <array>
#include <complex>

#include "dressline/core_model.hpp"
#include "dressline/dressed_dynamics.hpp"

namespace dressline {

struct EffectiveWavevector {
  double q;       // |k_mu - M k| for the process geometry
  double theta;   // observation angle as given
  double memory;  // M
};

// q = sqrt((k_mu - M k)^2 + 4 M k k_mu sin^2(theta/2)) for Raman-type
// processes. For kinds whose sign product is negative (two-quantum
// luminescence/absorption) the drive enters as -k, i.e. theta -> pi - theta.
EffectiveWavevector effective_q(double k, double k_mu, double theta, double M,
                                ProcessKind kind = ProcessKind::RamanUpperIntermediate);

struct VoigtParameters {
  complex p;            // c / D
  double doppler_scale; // D
};

VoigtParameters voigt_parameters(complex c, double doppler_scale);

// <1/(c - i D t)>; exact for D = 0 and via an asymptotic series for |c| >> D.
complex doppler_averaged_resonance(complex c, double doppler_scale);

struct DopplerScales {
  double drive;  // k vbar
  double probe;  // k_mu vbar
};

DopplerScales doppler_scales(const DriveField& drive, const ProbeField& probe, const ThermalEnsemble& ensemble);

struct RegimeRatios {
  double weak_field;              // G / |Omega - i gamma|
  double detuning_over_doppler;   // |Omega| / (k vbar)
  double field_over_doppler;      // G / (k vbar)
  double triplet;                 // G / max(|Omega|, k vbar, Gamma, gamma_l)
};

RegimeRatios regime_ratios(const LevelScheme& scheme, const DriveField& drive, const ThermalEnsemble& ensemble);

// Weak field, |Omega| >> k vbar: stepwise component (Doppler scale k_mu vbar,
// centred at Omega_mu = 0) and Raman component (scale q vbar, centred at
// Omega_mu = Omega) without the interference terms. Prefactor |G G_mu|^2/Omega^2.
struct WeakDoubletTerms {
  double stepwise;
  double raman;
  double total() const noexcept { return stepwise + raman; }
};

WeakDoubletTerms doppler_weak_terms(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                    const ThermalEnsemble& ensemble, double Omega_mu,
                                    ProcessKind kind = ProcessKind::RamanUpperIntermediate);

double doppler_weak_doublet(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                            const ThermalEnsemble& ensemble, double Omega_mu,
                            ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Doppler-dominated limit of the weak doublet: both components Gaussian.
WeakDoubletTerms doppler_weak_gaussian(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                       const ThermalEnsemble& ensemble, double Omega_mu,
                                       ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Strong field, G >> k vbar: two dressed components j with natural complex
// half-width gamma_l + conj(alpha_j0), Doppler scale q_j vbar where
// q_j = effective_q(k, k_mu, theta, M_j), weight 1/Re(alpha_j0) and common
// prefactor |G G_mu|^2 / (Omega^2 + 4 G^2).
struct StrongDoubletTerms {
  double first;   // alpha1 / M1 component
  double second;  // alpha2 / M2 component
  double total() const noexcept { return first + second; }
};

StrongDoubletTerms doppler_strong_terms(const LevelScheme& scheme, const DriveField& drive,
                                        const ProbeField& probe, const ThermalEnsemble& ensemble,
                                        double Omega_mu,
                                        ProcessKind kind = ProcessKind::RamanUpperIntermediate);

double doppler_strong_doublet(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                              const ThermalEnsemble& ensemble, double Omega_mu,
                              ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Resonance-fluorescence triplet on the driven transition in the limit
// G >> |Omega|, k vbar, Gamma, gamma_l. Components at Omega_mu - Omega = -2G, 0,
// +2G with weights 1:2:1, natural half-width Gamma = gamma_m + gamma_n and
// Doppler scale 2 k vbar sin(theta/2). Normalised to unit total area.
struct TripletTerms {
  double lower;    // Omega - 2G
  double central;  // Omega
  double upper;    // Omega + 2G
  double total() const noexcept { return lower + central + upper; }
};

TripletTerms fluorescence_triplet_terms(const LevelScheme& scheme, const DriveField& drive,
                                        const ThermalEnsemble& ensemble, double theta, double Omega_mu);

double fluorescence_triplet(const LevelScheme& scheme, const DriveField& drive, const ThermalEnsemble& ensemble,
                            double theta, double Omega_mu);

enum class DopplerVector { DriveProbeDifference, Probe };

struct ResonanceDescriptor {
  double center;       // Omega_mu at the maximum
  double half_width;   // natural half-width in the resonant denominator
  DopplerVector vector;
  double q;            // magnitude of the Doppler vector
};

// Positions and widths of the four resonant terms on the driven transition.
// No weights: they are only known in the strong-field limit.
std::array<ResonanceDescriptor, 4> triplet_resonance_positions(const DressedPair& pair, double k, double k_mu,
                                                               double theta);

}  // namespace dressline
