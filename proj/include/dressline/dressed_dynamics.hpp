#pragma once

#include <complex>
#include <optional>

#include "dressline/core_model.hpp"

namespace dressline {

using complex = std::complex<double>;

struct MemoryFactors {
  double M1;
  double M2;
};

// Exponents of the strongly driven m/n pair for a_n(0) = 1:
//   a_n(t) = [A1 e^{-alpha1 t} + A2 e^{-alpha2 t}] e^{i Omega t}
//   a_m(t) = iG (e^{-alpha2 t} - e^{-alpha1 t}) / (alpha1 - alpha2)
//
// Labelling: alpha1 = (Gamma + i Omega)/2 + iS, alpha2 = (Gamma + i Omega)/2 - iS
// with S = sqrt(G^2 + ((Omega - i gamma)/2)^2) on the principal branch. In
// the equal-damping case alpha1 is the root with Im alpha = (Omega +
// sqrt(Omega^2 + 4G^2))/2, i.e. the one whose memory factor is M1.
struct DressedPair {
  complex alpha1;
  complex alpha2;
  complex A1;
  complex A2;
  std::optional<MemoryFactors> memory;  // empty when G = Omega = 0
  double Gamma;       // gamma_m + gamma_n
  double gamma_diff;  // gamma_n - gamma_m
  double gamma_m;
  double G;
  double Omega;
  // |alpha1 - alpha2| below the switch threshold; amplitudes and spectra use the
  // confluent t e^{-alpha t} forms.
  bool confluent;

  complex alpha_mean() const noexcept { return 0.5 * (alpha1 + alpha2); }
};

// Relative threshold on |alpha1 - alpha2| / (Gamma + |Omega| + G) below which a
// pair is treated as confluent.
inline constexpr double confluent_threshold = 1e-8;

DressedPair dressed_exponents(const LevelScheme& scheme, const DriveField& drive);

complex amplitude_m(const DressedPair& pair, double t);
complex amplitude_n(const DressedPair& pair, double t);

// M_{1,2} = (1 +- Omega / sqrt(Omega^2 + 4 G^2)) / 2. Throws DomainError for
// G = Omega = 0. For G = 0 the limit is (1, 0) when Omega > 0 and (0, 1) when
// Omega < 0, matching the alpha labelling.
MemoryFactors memory_factors(const DriveField& drive);

// d Im(alpha_j) / d Omega from the general exponents. Equals the memory
// factors when gamma_m = gamma_n; otherwise a diagnostic only.
MemoryFactors frequency_slopes(const LevelScheme& scheme, const DriveField& drive);

// |Im alpha1 - Im alpha2| > Re alpha1 + Re alpha2 + 2 gamma_l (strict).
bool doublet_resolved(const DressedPair& pair, double gamma_l) noexcept;

}  // namespace dressline
