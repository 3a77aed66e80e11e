#include "dressline/core_model.hpp"

#include <cmath>
#include <string>

namespace dressline {
namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw DomainError(std::string(name) + " must be finite and > 0, got " + std::to_string(value));
  }
}

void require_non_negative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string(name) + " must be finite and >= 0, got " + std::to_string(value));
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

}  // namespace

LevelScheme::LevelScheme(double gamma_m, double gamma_n, double gamma_l)
    : gamma_m_(gamma_m), gamma_n_(gamma_n), gamma_l_(gamma_l) {
  require_positive(gamma_m, "gamma_m");
  require_positive(gamma_n, "gamma_n");
  require_positive(gamma_l, "gamma_l");
}

LevelScheme LevelScheme::with_frequencies(double omega_mn, double omega_ml) const {
  require_positive(omega_mn, "omega_mn");
  require_positive(omega_ml, "omega_ml");
  LevelScheme copy = *this;
  copy.omega_mn_ = omega_mn;
  copy.omega_ml_ = omega_ml;
  return copy;
}

LevelScheme LevelScheme::with_gamma_l(double gamma_l) const {
  LevelScheme copy(gamma_m_, gamma_n_, gamma_l);
  copy.omega_mn_ = omega_mn_;
  copy.omega_ml_ = omega_ml_;
  return copy;
}

std::optional<double> LevelScheme::omega_ln() const noexcept {
  if (omega_mn_ && omega_ml_) return *omega_ml_ - *omega_mn_;
  return std::nullopt;
}

DriveField::DriveField(double G, double Omega, double k) : G_(G), Omega_(Omega), k_(k) {
  require_non_negative(G, "G");
  require_finite(Omega, "Omega");
  require_non_negative(k, "k");
}

ProbeField::ProbeField(double G_mu, double k_mu, double theta)
    : G_mu_(G_mu), k_mu_(k_mu), theta_(theta) {
  require_non_negative(G_mu, "G_mu");
  require_non_negative(k_mu, "k_mu");
  if (!std::isfinite(theta) || theta < 0.0 || theta > constants::pi) {
    throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
  }
}

ThermalEnsemble::ThermalEnsemble(double vbar) : vbar_(vbar) { require_positive(vbar, "vbar"); }

ThermalEnsemble ThermalEnsemble::from_temperature(double temperature, double mass) {
  ThermalEnsemble ensemble(vbar_from_temperature(temperature, mass));
  ensemble.temperature_ = temperature;
  ensemble.mass_ = mass;
  return ensemble;
}

ProcessSigns process_signs(ProcessKind kind) noexcept {
  switch (kind) {
    case ProcessKind::RamanUpperIntermediate: return {+1, +1};
    case ProcessKind::TwoQuantumLuminescence: return {-1, +1};  // drive quantum emitted
    case ProcessKind::TwoQuantumAbsorption: return {+1, -1};    // probe quantum absorbed
    case ProcessKind::RamanLowerIntermediate: return {-1, -1};  // both roles reversed
  }
  return {+1, +1};
}

std::pair<double, double> apply_process_signs(ProcessKind kind, double Omega, double Omega_mu) noexcept {
  const ProcessSigns s = process_signs(kind);
  return {s.drive * Omega, s.probe * Omega_mu};
}

std::string_view to_string(ProcessKind kind) noexcept {
  switch (kind) {
    case ProcessKind::RamanUpperIntermediate: return "raman_upper";
    case ProcessKind::TwoQuantumLuminescence: return "two_quantum_luminescence";
    case ProcessKind::TwoQuantumAbsorption: return "two_quantum_absorption";
    case ProcessKind::RamanLowerIntermediate: return "raman_lower";
  }
  return "raman_upper";
}

ProcessKind process_kind_from_string(std::string_view name) {
  for (auto kind : {ProcessKind::RamanUpperIntermediate, ProcessKind::TwoQuantumLuminescence,
                    ProcessKind::TwoQuantumAbsorption, ProcessKind::RamanLowerIntermediate}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown process kind '" + std::string(name) + "'");
}

double rabi_from_field(double dipole, double field_amplitude) {
  require_non_negative(dipole, "dipole");
  require_non_negative(field_amplitude, "field_amplitude");
  return dipole * field_amplitude / (2.0 * constants::hbar);
}

double vbar_from_temperature(double temperature, double mass) {
  require_positive(temperature, "temperature");
  require_positive(mass, "mass");
  return std::sqrt(2.0 * constants::boltzmann * temperature / mass);
}

double temperature_from_vbar(double vbar, double mass) {
  require_positive(vbar, "vbar");
  require_positive(mass, "mass");
  return mass * vbar * vbar / (2.0 * constants::boltzmann);
}

}  // namespace dressline
