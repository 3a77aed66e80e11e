#pragma once

// Brute-force validators for the closed forms: direct integration of the
// amplitude equations and Gauss-Hermite averaging over the Maxwell
// distribution. Nothing here calls the closed-form spectrum or erfcx paths.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dressline/core_model.hpp"
#include "dressline/doppler_average.hpp"

namespace dressline {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class IntegratorOrder { DormandPrince5, Fehlberg78 };

struct OdeSettings {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  // Defaults to 40 / min(gamma_m, gamma_n, gamma_l); the neglected tail is
  // below e^{-80} of the accumulated integral.
  std::optional<double> horizon;
  IntegratorOrder order = IntegratorOrder::Fehlberg78;
  // Re-run at tolerances / 10 and throw ConvergenceError when the relative
  // change exceeds verify_tolerance.
  bool verify = false;
  double verify_tolerance = 1e-7;

  void validate() const;
};

struct TimeDomainResult {
  double w;
  double error_estimate;  // |w(tol) - w(tol/10)| when verified, else 0
  double horizon;
  std::size_t steps;
};

using Velocity = std::array<double, 3>;

// 2 gamma_l \int_0^T |a_l|^2 dt from the rotating-frame equations with the
// substitutions Omega -> Omega - k.v, Omega_mu -> Omega_mu - k_mu.v. k lies
// along x, k_mu in the x-y plane at angle theta; velocity is in the units of
// vbar used for k (i.e. k * v must be an angular frequency).
TimeDomainResult w_mu_time_domain(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                  double Omega_mu, const Velocity& velocity = {0.0, 0.0, 0.0},
                                  const OdeSettings& settings = {},
                                  ProcessKind kind = ProcessKind::RamanUpperIntermediate);

struct AmplitudeSample {
  double t;
  std::complex<double> a_n;
  std::complex<double> a_m;
};

// Numerical a_n(t), a_m(t) for a_n(0) = 1 at an atom at rest; `times` must be
// non-decreasing and start at >= 0.
std::vector<AmplitudeSample> time_domain_amplitudes(const LevelScheme& scheme, const DriveField& drive,
                                                    const std::vector<double>& times,
                                                    const OdeSettings& settings = {});

struct QuadratureSettings {
  std::size_t order = 64;  // Gauss-Hermite nodes per axis, >= 8
  // 0 picks 1 for collinear geometry and 2 otherwise.
  int dimensions = 0;
  bool doubling = false;
  double doubling_tolerance = 1e-9;

  void validate() const;
};

struct DopplerGeometry {
  double drive_scale;  // k vbar
  double probe_scale;  // k_mu vbar
  double theta;
};

// Integrand as a function of the Doppler shifts (k.v, k_mu.v).
using VelocityIntegrand = std::function<double(double, double)>;

struct QuadratureResult {
  double value;
  std::optional<double> doubled;
  double relative_change;
  int dimensions;
};

// Tensor-product Gauss-Hermite average over the Maxwell distribution in the
// plane spanned by k and k_mu; the orthogonal velocity component integrates
// out exactly.
QuadratureResult velocity_average(const VelocityIntegrand& integrand, const DopplerGeometry& geometry,
                                  const QuadratureSettings& settings = {});

DopplerGeometry doppler_geometry(const DriveField& drive, const ProbeField& probe, const ThermalEnsemble& ensemble);

enum class WeakComponent { Both, Stepwise, Raman };

// Weak-field, no-interference terms at one velocity with the rest-frame 1/Omega^2
// prefactor.
VelocityIntegrand weak_doublet_integrand(const LevelScheme& scheme, const DriveField& drive,
                                         const ProbeField& probe, double Omega_mu,
                                         ProcessKind kind = ProcessKind::RamanUpperIntermediate,
                                         WeakComponent component = WeakComponent::Both);

// Strong-field no-interference terms with exponents linearised in k.v through
// the memory factors.
VelocityIntegrand strong_doublet_integrand(const LevelScheme& scheme, const DriveField& drive,
                                           const ProbeField& probe, double Omega_mu,
                                           ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Strong-field no-interference terms with the exponents recomputed exactly at
// the Doppler-shifted detuning.
VelocityIntegrand strong_doublet_exact_integrand(const LevelScheme& scheme, const DriveField& drive,
                                                 const ProbeField& probe, double Omega_mu,
                                                 ProcessKind kind = ProcessKind::RamanUpperIntermediate);

// Unit-area triplet integrand; the observed wave vector has magnitude k, so the
// geometry must use probe_scale = drive_scale.
VelocityIntegrand triplet_integrand(const LevelScheme& scheme, const DriveField& drive, double Omega_mu);

enum class ClosedForm { Eq2_6, Eq2_7, Eq3_2, Eq3_3, Eq4_2, Eq5_2 };

ClosedForm closed_form_from_id(std::string_view id);
std::string_view to_string(ClosedForm form) noexcept;

struct CertificationCase {
  LevelScheme scheme;
  DriveField drive;
  ProbeField probe;
  ThermalEnsemble ensemble;
  ProcessKind kind = ProcessKind::RamanUpperIntermediate;
  std::vector<double> grid;  // empty: default_certification_grid
  OdeSettings ode{};
  QuadratureSettings quadrature{};
};

std::vector<double> default_certification_grid(ClosedForm form, const CertificationCase& c);

enum class CertificationOutcome { Pass, Fail, RegimeViolation, ToleranceUnattainable };
std::string_view to_string(CertificationOutcome outcome) noexcept;

struct CertificationReport {
  ClosedForm form;
  CertificationOutcome outcome;
  double max_deviation;  // NaN when not evaluated
  double tolerance;
  RegimeRatios regime;
  std::size_t points;
  std::string metric;
  std::string note;
  bool passed() const noexcept { return outcome == CertificationOutcome::Pass; }
};

// Lowest tolerance each comparison can honour in double precision.
double attainable_tolerance(ClosedForm form) noexcept;

CertificationReport certify(ClosedForm form, const CertificationCase& c, double tolerance);

// One-line JSON record.
std::string format_report_record(const CertificationReport& report);

}  // namespace dressline
