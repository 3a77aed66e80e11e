#include "dressline/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "dressline/dressed_dynamics.hpp"
#include "dressline/gauss_hermite.hpp"
#include "dressline/stationary_spectrum.hpp"
#include "json.hpp"

namespace dressline {
namespace {

namespace odeint = boost::numeric::odeint;

constexpr std::complex<double> I{0.0, 1.0};
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Rotating frame: a_n = b_n e^{i Omega t}, a_l = b_l e^{i Omega_mu t}, so the
// system has constant coefficients. State: b_n, a_m, b_l (re, im) and the
// running integral of |b_l|^2.
using State = std::array<double, 7>;

struct AmplitudeSystem {
  double gamma_m, gamma_n, gamma_l;
  double G, G_mu;
  double Omega, Omega_mu;

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    const std::complex<double> bn(x[0], x[1]);
    const std::complex<double> am(x[2], x[3]);
    const std::complex<double> bl(x[4], x[5]);
    const std::complex<double> dbn = -(gamma_n + I * Omega) * bn + I * G * am;
    const std::complex<double> dam = -gamma_m * am + I * G * bn;
    const std::complex<double> dbl = -(gamma_l + I * Omega_mu) * bl + I * G_mu * am;
    dxdt = {dbn.real(), dbn.imag(), dam.real(), dam.imag(), dbl.real(), dbl.imag(), std::norm(bl)};
  }
};

template <class System>
std::size_t integrate_to(const System& system, State& x, double t0, double t1, double rel_tol, double abs_tol,
                         IntegratorOrder order, double dt0) {
  if (order == IntegratorOrder::Fehlberg78) {
    auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<State>());
    return odeint::integrate_adaptive(stepper, system, x, t0, t1, dt0);
  }
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());
  return odeint::integrate_adaptive(stepper, system, x, t0, t1, dt0);
}

double min_rate(const LevelScheme& s) { return std::min({s.gamma_m(), s.gamma_n(), s.gamma_l()}); }

struct SingleRun {
  double w;
  std::size_t steps;
};

SingleRun run_once(const AmplitudeSystem& system, double horizon, double rel_tol, double abs_tol,
                   IntegratorOrder order) {
  State x{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const double fastest = std::abs(system.Omega) + std::abs(system.Omega_mu) + system.G + system.gamma_m +
                         system.gamma_n + system.gamma_l;
  const std::size_t steps = integrate_to(system, x, 0.0, horizon, rel_tol, abs_tol, order, 0.01 / fastest);
  return {2.0 * system.gamma_l * x[6], steps};
}

// Doppler shifts (k.v, k_mu.v) mapped to the signed formula detunings.
std::pair<double, double> signed_detunings(ProcessKind kind, double Omega, double Omega_mu, double kv, double kmu_v) {
  return apply_process_signs(kind, Omega - kv, Omega_mu - kmu_v);
}

double relative_deviation(double value, double reference) {
  const double diff = std::abs(value - reference);
  if (reference == 0.0) return diff;
  return diff / std::abs(reference);
}

}  // namespace

void OdeSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("OdeSettings: tolerances must be > 0");
  if (horizon && !(*horizon > 0.0)) throw DomainError("OdeSettings: horizon must be > 0");
  if (!(verify_tolerance > 0.0)) throw DomainError("OdeSettings: verify_tolerance must be > 0");
}

void QuadratureSettings::validate() const {
  if (order < 8) throw DomainError("QuadratureSettings: order must be >= 8");
  if (dimensions < 0 || dimensions > 2) throw DomainError("QuadratureSettings: dimensions must be 0, 1 or 2");
  if (!(doubling_tolerance > 0.0)) throw DomainError("QuadratureSettings: doubling_tolerance must be > 0");
}

TimeDomainResult w_mu_time_domain(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                                  double Omega_mu, const Velocity& velocity, const OdeSettings& settings,
                                  ProcessKind kind) {
  settings.validate();
  const double kv = drive.k() * velocity[0];
  const double kmu_v = probe.k_mu() * (std::cos(probe.theta()) * velocity[0] + std::sin(probe.theta()) * velocity[1]);
  const auto [Omega, Om] = signed_detunings(kind, drive.Omega(), Omega_mu, kv, kmu_v);

  const AmplitudeSystem system{scheme.gamma_m(), scheme.gamma_n(), scheme.gamma_l(), drive.G(), probe.G_mu(),
                               Omega, Om};
  const double horizon = settings.horizon.value_or(40.0 / min_rate(scheme));
  if (drive.G() == 0.0 || probe.G_mu() == 0.0) return {0.0, 0.0, horizon, 0};

  const SingleRun coarse = run_once(system, horizon, settings.rel_tol, settings.abs_tol, settings.order);
  if (!settings.verify) return {coarse.w, 0.0, horizon, coarse.steps};

  const SingleRun fine = run_once(system, horizon, 0.1 * settings.rel_tol, 0.1 * settings.abs_tol, settings.order);
  const double residual = std::abs(fine.w - coarse.w);
  if (residual > settings.verify_tolerance * std::abs(fine.w) + settings.abs_tol) {
    throw ConvergenceError("w_mu_time_domain: tolerance refinement changed w by " + std::to_string(residual) +
                           " (w = " + std::to_string(fine.w) + ")");
  }
  return {fine.w, residual, horizon, coarse.steps + fine.steps};
}

std::vector<AmplitudeSample> time_domain_amplitudes(const LevelScheme& scheme, const DriveField& drive,
                                                    const std::vector<double>& times,
                                                    const OdeSettings& settings) {
  settings.validate();
  const AmplitudeSystem system{scheme.gamma_m(), scheme.gamma_n(), scheme.gamma_l(), drive.G(), 0.0,
                               drive.Omega(), 0.0};
  State x{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::vector<AmplitudeSample> out;
  out.reserve(times.size());
  double t = 0.0;
  const double fastest = std::abs(drive.Omega()) + drive.G() + scheme.gamma_m() + scheme.gamma_n();
  for (double target : times) {
    if (target < t) throw DomainError("time_domain_amplitudes: times must be non-decreasing and >= 0");
    if (target > t) {
      integrate_to(system, x, t, target, settings.rel_tol, settings.abs_tol, settings.order, 0.01 / fastest);
      t = target;
    }
    const std::complex<double> bn(x[0], x[1]);
    out.push_back({t, bn * std::exp(I * drive.Omega() * t), {x[2], x[3]}});
  }
  return out;
}

DopplerGeometry doppler_geometry(const DriveField& drive, const ProbeField& probe, const ThermalEnsemble& ensemble) {
  return {drive.k() * ensemble.vbar(), probe.k_mu() * ensemble.vbar(), probe.theta()};
}

namespace {

double average_with_order(const VelocityIntegrand& f, const DopplerGeometry& g, std::size_t order, int dims) {
  const auto rule = gauss_hermite_rule(order);
  const auto& t = rule->nodes;
  const auto& w = rule->weights;
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  double sum = 0.0;
  if (dims == 1) {
    for (std::size_t i = 0; i < t.size(); ++i) sum += w[i] * f(g.drive_scale * t[i], g.probe_scale * c * t[i]);
    return sum / constants::sqrt_pi;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      inner += w[j] * f(g.drive_scale * t[i], g.probe_scale * (c * t[i] + s * t[j]));
    }
    sum += w[i] * inner;
  }
  return sum / constants::pi;
}

}  // namespace

QuadratureResult velocity_average(const VelocityIntegrand& integrand, const DopplerGeometry& geometry,
                                  const QuadratureSettings& settings) {
  settings.validate();
  if (!(geometry.drive_scale >= 0.0) || !(geometry.probe_scale >= 0.0)) {
    throw DomainError("velocity_average: Doppler scales must be >= 0");
  }
  int dims = settings.dimensions;
  if (dims == 0) {
    const bool collinear = geometry.drive_scale == 0.0 || geometry.probe_scale == 0.0 || geometry.theta == 0.0 ||
                           geometry.theta == constants::pi;
    dims = collinear ? 1 : 2;
  }
  if (dims == 1 && geometry.drive_scale == 0.0 && geometry.probe_scale > 0.0 && geometry.theta != 0.0 &&
      geometry.theta != constants::pi) {
    // Only k_mu matters: put it on the first axis.
    DopplerGeometry g{0.0, geometry.probe_scale, 0.0};
    QuadratureSettings one = settings;
    one.dimensions = 1;
    return velocity_average(integrand, g, one);
  }

  QuadratureResult result{};
  result.dimensions = dims;
  result.value = average_with_order(integrand, geometry, settings.order, dims);
  result.relative_change = 0.0;
  if (settings.doubling) {
    const double doubled = average_with_order(integrand, geometry, 2 * settings.order, dims);
    result.doubled = doubled;
    result.relative_change = relative_deviation(result.value, doubled);
    if (result.relative_change > settings.doubling_tolerance) {
      throw ConvergenceError("velocity_average: order " + std::to_string(settings.order) + " gives " +
                             std::to_string(result.value) + ", order " + std::to_string(2 * settings.order) +
                             " gives " + std::to_string(doubled));
    }
  }
  return result;
}

VelocityIntegrand weak_doublet_integrand(const LevelScheme& scheme, const DriveField& drive,
                                         const ProbeField& probe, double Omega_mu, ProcessKind kind,
                                         WeakComponent component) {
  const double Omega0 = process_signs(kind).drive * drive.Omega();
  if (Omega0 == 0.0) throw RegimeError("weak_doublet_integrand: requires Omega != 0");
  const double GG = drive.G() * probe.G_mu();
  const double prefactor = GG * GG / (Omega0 * Omega0);
  const double gm = scheme.gamma_m(), gn = scheme.gamma_n(), gl = scheme.gamma_l();
  const double Omega = drive.Omega();
  return [=](double kv, double kmu_v) {
    const auto [Om, Omu] = signed_detunings(kind, Omega, Omega_mu, kv, kmu_v);
    double value = 0.0;
    if (component != WeakComponent::Raman) value += (1.0 / (gm * std::complex<double>(gl + gm, Omu))).real();
    if (component != WeakComponent::Stepwise) value += (1.0 / (gn * std::complex<double>(gl + gn, Omu - Om))).real();
    return prefactor * value;
  };
}

VelocityIntegrand strong_doublet_integrand(const LevelScheme& scheme, const DriveField& drive,
                                           const ProbeField& probe, double Omega_mu, ProcessKind kind) {
  const double Omega0 = process_signs(kind).drive * drive.Omega();
  const DriveField rest = drive.with_Omega(Omega0);
  const DressedPair pair = dressed_exponents(scheme, rest);
  const MemoryFactors M = memory_factors(rest);
  const double G = drive.G();
  const double GG = G * probe.G_mu();
  const double prefactor = GG * GG / (Omega0 * Omega0 + 4.0 * G * G);
  const double gl = scheme.gamma_l();
  const double Omega = drive.Omega();
  return [=](double kv, double kmu_v) {
    const auto [Om, Omu] = signed_detunings(kind, Omega, Omega_mu, kv, kmu_v);
    const double shift = Om - Omega0;
    const std::complex<double> a1 = pair.alpha1 + I * M.M1 * shift;
    const std::complex<double> a2 = pair.alpha2 + I * M.M2 * shift;
    const std::complex<double> t1 = 1.0 / (pair.alpha1.real() * (gl + std::conj(a1) + I * Omu));
    const std::complex<double> t2 = 1.0 / (pair.alpha2.real() * (gl + std::conj(a2) + I * Omu));
    return prefactor * (t1 + t2).real();
  };
}

VelocityIntegrand strong_doublet_exact_integrand(const LevelScheme& scheme, const DriveField& drive,
                                                 const ProbeField& probe, double Omega_mu, ProcessKind kind) {
  const double GG = drive.G() * probe.G_mu();
  const double gl = scheme.gamma_l();
  const double Omega = drive.Omega();
  return [=](double kv, double kmu_v) {
    const auto [Om, Omu] = signed_detunings(kind, Omega, Omega_mu, kv, kmu_v);
    const DressedPair pair = dressed_exponents(scheme, drive.with_Omega(Om));
    const std::complex<double> t1 = 1.0 / (pair.alpha1.real() * (gl + std::conj(pair.alpha1) + I * Omu));
    const std::complex<double> t2 = 1.0 / (pair.alpha2.real() * (gl + std::conj(pair.alpha2) + I * Omu));
    return GG * GG / std::norm(pair.alpha1 - pair.alpha2) * (t1 + t2).real();
  };
}

VelocityIntegrand triplet_integrand(const LevelScheme& scheme, const DriveField& drive, double Omega_mu) {
  const double Gamma = scheme.gamma_m() + scheme.gamma_n();
  const double x0 = Omega_mu - drive.Omega();
  const double G2 = 2.0 * drive.G();
  return [=](double kv, double kmu_v) {
    const double x = x0 - (kmu_v - kv);
    const double value = (1.0 / std::complex<double>(Gamma, x - G2)).real() +
                         2.0 * (1.0 / std::complex<double>(Gamma, x)).real() +
                         (1.0 / std::complex<double>(Gamma, x + G2)).real();
    return value / (4.0 * constants::pi);
  };
}

ClosedForm closed_form_from_id(std::string_view id) {
  for (auto f : {ClosedForm::Eq2_6, ClosedForm::Eq2_7, ClosedForm::Eq3_2, ClosedForm::Eq3_3, ClosedForm::Eq4_2,
                 ClosedForm::Eq5_2}) {
    if (to_string(f) == id) return f;
  }
  throw DomainError("unknown closed-form id '" + std::string(id) + "'");
}

std::string_view to_string(ClosedForm form) noexcept {
  switch (form) {
    case ClosedForm::Eq2_6: return "eq2_6";
    case ClosedForm::Eq2_7: return "eq2_7";
    case ClosedForm::Eq3_2: return "eq3_2";
    case ClosedForm::Eq3_3: return "eq3_3";
    case ClosedForm::Eq4_2: return "eq4_2";
    case ClosedForm::Eq5_2: return "eq5_2";
  }
  return "eq2_6";
}

std::string_view to_string(CertificationOutcome outcome) noexcept {
  switch (outcome) {
    case CertificationOutcome::Pass: return "pass";
    case CertificationOutcome::Fail: return "fail";
    case CertificationOutcome::RegimeViolation: return "regime_violation";
    case CertificationOutcome::ToleranceUnattainable: return "tolerance_unattainable";
  }
  return "fail";
}

double attainable_tolerance(ClosedForm form) noexcept {
  switch (form) {
    case ClosedForm::Eq2_6:
    case ClosedForm::Eq2_7: return 1e-10;
    default: return 1e-12;
  }
}

namespace {

struct ComponentScales {
  double stepwise;  // k_mu vbar
  double raman;     // q vbar
};

ComponentScales weak_scales(const CertificationCase& c) {
  const double vbar = c.ensemble.vbar();
  return {c.probe.k_mu() * vbar, effective_q(c.drive.k(), c.probe.k_mu(), c.probe.theta(), 1.0, c.kind).q * vbar};
}

// Average of f(t) over e^{-t^2}/sqrt(pi) by adaptive Gauss-Kronrod, with
// breakpoints clustered around a narrow feature at `centre` of scale `width`.
double gaussian_line_average(const std::function<double(double)>& f, double centre, double width) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts{-std::numeric_limits<double>::infinity()};
  for (double m : {-1000.0, -100.0, -10.0, -1.0, 0.0, 1.0, 10.0, 100.0, 1000.0}) {
    const double t = centre + m * width;
    if (std::abs(t) < 40.0) cuts.push_back(t);
  }
  cuts.push_back(std::numeric_limits<double>::infinity());
  std::sort(cuts.begin(), cuts.end());
  auto g = [&](double t) { return f(t) * std::exp(-t * t); };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) sum += gauss_kronrod<double, 61>::integrate(g, cuts[i], cuts[i + 1], 12, 1e-11);
  }
  return sum / constants::sqrt_pi;
}

}  // namespace

std::vector<double> default_certification_grid(ClosedForm form, const CertificationCase& c) {
  const auto& s = c.scheme;
  const double G = c.drive.G();
  const double Omega = c.drive.Omega();
  const double width = s.gamma_l() + s.gamma_m() + s.gamma_n();
  const double lo_centre = std::min(0.0, Omega);
  const double hi_centre = std::max(0.0, Omega);
  switch (form) {
    case ClosedForm::Eq2_6:
    case ClosedForm::Eq2_7:
      return linear_grid(lo_centre - 2.0 * G - 6.0 * width, hi_centre + 2.0 * G + 6.0 * width, 33);
    case ClosedForm::Eq3_2: {
      const ComponentScales d = weak_scales(c);
      const double reach = 3.0 * std::max(d.stepwise, d.raman) + 5.0 * width;
      return linear_grid(lo_centre - reach, hi_centre + reach, 17);
    }
    case ClosedForm::Eq3_3: {
      // Component centres (in lab Omega_mu) +- 2 Doppler scales.
      const ComponentScales d = weak_scales(c);
      const ProcessSigns sg = process_signs(c.kind);
      const double raman_centre = sg.probe * sg.drive * Omega;
      std::vector<double> grid;
      for (int i = -4; i <= 4; ++i) grid.push_back(0.5 * i * d.stepwise);
      for (int i = -4; i <= 4; ++i) grid.push_back(raman_centre + 0.5 * i * d.raman);
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      return grid;
    }
    case ClosedForm::Eq4_2: {
      const double D = (c.drive.k() + c.probe.k_mu()) * c.ensemble.vbar();
      const double reach = 0.5 * std::abs(Omega) + G + 3.0 * D + 5.0 * width;
      return linear_grid(0.5 * Omega - reach, 0.5 * Omega + reach, 17);
    }
    case ClosedForm::Eq5_2: {
      const double D = 2.0 * c.drive.k() * c.ensemble.vbar();
      const double reach = 2.0 * G + 3.0 * D + 5.0 * (s.gamma_m() + s.gamma_n());
      return linear_grid(Omega - reach, Omega + reach, 17);
    }
  }
  return {};
}

CertificationReport certify(ClosedForm form, const CertificationCase& c, double tolerance) {
  CertificationReport report{};
  report.form = form;
  report.tolerance = tolerance;
  report.max_deviation = nan;
  report.regime = regime_ratios(c.scheme, c.drive, c.ensemble);
  report.metric = "max pointwise relative deviation";

  if (!(tolerance > 0.0)) throw DomainError("certify: tolerance must be > 0");
  if (tolerance < attainable_tolerance(form)) {
    report.outcome = CertificationOutcome::ToleranceUnattainable;
    report.note = "tolerance below the attainable floor " + std::to_string(attainable_tolerance(form)) +
                  " for this comparison in double precision";
    return report;
  }

  const auto& s = c.scheme;
  const RegimeRatios& r = report.regime;
  auto violate = [&](std::string note) {
    report.outcome = CertificationOutcome::RegimeViolation;
    report.note = std::move(note);
    return report;
  };
  switch (form) {
    case ClosedForm::Eq2_6: break;
    case ClosedForm::Eq2_7:
      if (!(r.weak_field <= 0.1)) return violate("weak-field expansion needs G/|Omega - i gamma| <= 0.1");
      break;
    case ClosedForm::Eq3_2:
      if (!(r.detuning_over_doppler >= 10.0)) return violate("weak Doppler doublet needs |Omega|/(k vbar) >= 10");
      break;
    case ClosedForm::Eq3_3: {
      const ComponentScales d = weak_scales(c);
      if (!(r.detuning_over_doppler >= 10.0)) return violate("weak Doppler doublet needs |Omega|/(k vbar) >= 10");
      if (!(d.stepwise >= 200.0 * (s.gamma_l() + s.gamma_m()) && d.raman >= 200.0 * (s.gamma_l() + s.gamma_n()))) {
        return violate("Gaussian form needs each Doppler scale >= 100 natural FWHM");
      }
      report.metric = "max |gaussian - average| / component peak over |detuning| <= 2 Doppler scales";
      break;
    }
    case ClosedForm::Eq4_2:
      if (!(r.field_over_doppler >= 10.0)) return violate("strong-field doublet needs G/(k vbar) >= 10");
      break;
    case ClosedForm::Eq5_2:
      if (!(r.triplet >= 10.0)) {
        return violate("triplet limit needs G >= 10 max(|Omega|, k vbar, Gamma, gamma_l)");
      }
      break;
  }

  const std::vector<double> grid = c.grid.empty() ? default_certification_grid(form, c) : c.grid;
  report.points = grid.size();
  double worst = 0.0;
  try {
    if (form == ClosedForm::Eq3_3) {
      const ComponentScales d = weak_scales(c);
      const ProcessSigns sg = process_signs(c.kind);
      const double Omega = c.drive.Omega();
      const double raman_centre = sg.probe * sg.drive * Omega;
      const double vbar = c.ensemble.vbar();
      const double ct = std::cos(c.probe.theta());
      const double st = std::sin(c.probe.theta());
      // Unit vector along s_p k_mu - s_d k; the Raman term depends on v only through it.
      const double qx = sg.probe * c.probe.k_mu() * ct - sg.drive * c.drive.k();
      const double qy = sg.probe * c.probe.k_mu() * st;
      const double qn = std::hypot(qx, qy);
      const double drive_along_q = c.drive.k() * qx / qn * vbar;
      const double probe_along_q = c.probe.k_mu() * (ct * qx + st * qy) / qn * vbar;

      auto stepwise_oracle = [&](double x) {
        auto f = weak_doublet_integrand(s, c.drive, c.probe, x, c.kind, WeakComponent::Stepwise);
        return gaussian_line_average([&](double t) { return f(0.0, d.stepwise * t); }, x / d.stepwise,
                                     (s.gamma_l() + s.gamma_m()) / d.stepwise);
      };
      auto raman_oracle = [&](double x) {
        auto f = weak_doublet_integrand(s, c.drive, c.probe, x, c.kind, WeakComponent::Raman);
        return gaussian_line_average([&](double t) { return f(drive_along_q * t, probe_along_q * t); },
                                     (sg.probe * x - sg.drive * Omega) / d.raman,
                                     (s.gamma_l() + s.gamma_n()) / d.raman);
      };
      const double stepwise_peak = stepwise_oracle(0.0);
      const double raman_peak = raman_oracle(raman_centre);
      for (double x : grid) {
        const WeakDoubletTerms gauss = doppler_weak_gaussian(s, c.drive, c.probe, c.ensemble, x, c.kind);
        if (std::abs(x) <= 2.0 * d.stepwise) {
          worst = std::max(worst, std::abs(gauss.stepwise - stepwise_oracle(x)) / stepwise_peak);
        }
        if (std::abs(x - raman_centre) <= 2.0 * d.raman) {
          worst = std::max(worst, std::abs(gauss.raman - raman_oracle(x)) / raman_peak);
        }
      }
    } else {
      for (double x : grid) {
        double value = 0.0;
        double reference = 0.0;
        switch (form) {
          case ClosedForm::Eq2_6:
            value = w_mu_exact(s, c.drive, c.probe, x, c.kind);
            reference = w_mu_time_domain(s, c.drive, c.probe, x, {0.0, 0.0, 0.0}, c.ode, c.kind).w;
            break;
          case ClosedForm::Eq2_7:
            value = w_mu_weak(s, c.drive, c.probe, x, true, c.kind).w;
            reference = w_mu_time_domain(s, c.drive, c.probe, x, {0.0, 0.0, 0.0}, c.ode, c.kind).w;
            break;
          case ClosedForm::Eq3_2:
            value = doppler_weak_doublet(s, c.drive, c.probe, c.ensemble, x, c.kind);
            reference = velocity_average(weak_doublet_integrand(s, c.drive, c.probe, x, c.kind),
                                         doppler_geometry(c.drive, c.probe, c.ensemble), c.quadrature).value;
            break;
          case ClosedForm::Eq4_2:
            value = doppler_strong_doublet(s, c.drive, c.probe, c.ensemble, x, c.kind);
            reference = velocity_average(strong_doublet_integrand(s, c.drive, c.probe, x, c.kind),
                                         doppler_geometry(c.drive, c.probe, c.ensemble), c.quadrature).value;
            break;
          case ClosedForm::Eq5_2: {
            const double kv = c.drive.k() * c.ensemble.vbar();
            value = fluorescence_triplet(s, c.drive, c.ensemble, c.probe.theta(), x);
            reference = velocity_average(triplet_integrand(s, c.drive, x), {kv, kv, c.probe.theta()},
                                         c.quadrature).value;
            break;
          }
          case ClosedForm::Eq3_3: break;
        }
        worst = std::max(worst, relative_deviation(value, reference));
      }
    }
  } catch (const ConvergenceError& e) {
    report.outcome = CertificationOutcome::Fail;
    report.note = std::string("oracle did not converge: ") + e.what();
    return report;
  }

  report.max_deviation = worst;
  report.outcome = worst <= tolerance ? CertificationOutcome::Pass : CertificationOutcome::Fail;
  if (!report.passed()) report.note = "deviation exceeds tolerance";
  return report;
}

std::string format_report_record(const CertificationReport& report) {
  nlohmann::ordered_json j;
  j["id"] = std::string(to_string(report.form));
  j["outcome"] = std::string(to_string(report.outcome));
  j["max_deviation"] = std::isnan(report.max_deviation) ? nlohmann::ordered_json(nullptr)
                                                        : nlohmann::ordered_json(report.max_deviation);
  j["tolerance"] = report.tolerance;
  j["metric"] = report.metric;
  j["points"] = report.points;
  auto finite_or_null = [](double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
  };
  j["regime"] = {{"weak_field", finite_or_null(report.regime.weak_field)},
                 {"detuning_over_doppler", finite_or_null(report.regime.detuning_over_doppler)},
                 {"field_over_doppler", finite_or_null(report.regime.field_over_doppler)},
                 {"triplet", finite_or_null(report.regime.triplet)}};
  j["note"] = report.note;
  return j.dump();
}

}  // namespace dressline
