#pragma once

// Physical input types shared by every module.
//
// Unit convention: every rate, detuning and Rabi parameter is an angular
// frequency in one common unit. Decay constants gamma_* are amplitude damping
// rates (field half-widths): a level with gamma_i contributes half-width
// gamma_i to a Lorentzian, and its population decays as exp(-2 gamma_i t).
// Wave vectors only enter through the Doppler scales k*vbar and k_mu*vbar, so
// callers may either give k and vbar separately or give the product as k with
// vbar = 1.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dressline {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A formula was asked to operate where it is singular or outside its regime.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double boltzmann = 1.380649e-23;    // J / K
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145183;
}  // namespace constants

class LevelScheme {
 public:
  LevelScheme(double gamma_m, double gamma_n, double gamma_l);

  // Attaches absolute transition frequencies used only for labelling output.
  LevelScheme with_frequencies(double omega_mn, double omega_ml) const;

  double gamma_m() const noexcept { return gamma_m_; }
  double gamma_n() const noexcept { return gamma_n_; }
  double gamma_l() const noexcept { return gamma_l_; }
  std::optional<double> omega_mn() const noexcept { return omega_mn_; }
  std::optional<double> omega_ml() const noexcept { return omega_ml_; }
  std::optional<double> omega_ln() const noexcept;

  // Copy with gamma_l replaced; used when the observed transition is m -> n.
  LevelScheme with_gamma_l(double gamma_l) const;

 private:
  double gamma_m_;
  double gamma_n_;
  double gamma_l_;
  std::optional<double> omega_mn_;
  std::optional<double> omega_ml_;
};

// Strong field on m <-> n: Rabi parameter G = d_mn E / 2 hbar, detuning
// Omega = omega - omega_mn, wave-vector magnitude k.
class DriveField {
 public:
  DriveField(double G, double Omega, double k = 0.0);

  double G() const noexcept { return G_; }
  double Omega() const noexcept { return Omega_; }
  double k() const noexcept { return k_; }

  DriveField with_Omega(double Omega) const { return DriveField(G_, Omega, k_); }
  DriveField with_G(double G) const { return DriveField(G, Omega_, k_); }

 private:
  double G_;
  double Omega_;
  double k_;
};

// Weak probe on m <-> l. theta is the angle between k and k_mu.
class ProbeField {
 public:
  ProbeField(double G_mu, double k_mu = 0.0, double theta = 0.0);

  double G_mu() const noexcept { return G_mu_; }
  double k_mu() const noexcept { return k_mu_; }
  double theta() const noexcept { return theta_; }

  ProbeField with_theta(double theta) const { return ProbeField(G_mu_, k_mu_, theta); }
  ProbeField with_k_mu(double k_mu) const { return ProbeField(G_mu_, k_mu, theta_); }

 private:
  double G_mu_;
  double k_mu_;
  double theta_;
};

class ThermalEnsemble {
 public:
  explicit ThermalEnsemble(double vbar);
  static ThermalEnsemble from_temperature(double temperature, double mass);

  double vbar() const noexcept { return vbar_; }
  std::optional<double> temperature() const noexcept { return temperature_; }
  std::optional<double> mass() const noexcept { return mass_; }

 private:
  double vbar_;
  std::optional<double> temperature_;
  std::optional<double> mass_;
};

enum class ProcessKind {
  RamanUpperIntermediate,
  TwoQuantumLuminescence,
  TwoQuantumAbsorption,
  RamanLowerIntermediate,
};

// Sign applied to (Omega, Omega_mu): +1 when the quantum plays the same role
// (absorbed drive / emitted probe) as in Raman scattering via an upper level.
struct ProcessSigns {
  int drive;
  int probe;
  int product() const noexcept { return drive * probe; }
};

ProcessSigns process_signs(ProcessKind kind) noexcept;
std::pair<double, double> apply_process_signs(ProcessKind kind, double Omega, double Omega_mu) noexcept;

std::string_view to_string(ProcessKind kind) noexcept;
ProcessKind process_kind_from_string(std::string_view name);

// d E / (2 hbar) in rad/s for a dipole in C m and a field amplitude in V/m.
double rabi_from_field(double dipole, double field_amplitude);

// Most probable Maxwellian speed sqrt(2 k_B T / m), SI units.
double vbar_from_temperature(double temperature, double mass);
double temperature_from_vbar(double vbar, double mass);

}  // namespace dressline
