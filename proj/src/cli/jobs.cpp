#include "dressline/cli/jobs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "dressline/dressed_dynamics.hpp"
#include "dressline/line_analysis.hpp"
#include "dressline/parallel.hpp"
#include "dressline/stationary_spectrum.hpp"
#include "json.hpp"

namespace dressline::cli {
namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double inf = std::numeric_limits<double>::infinity();

constexpr const char* units_note =
    "all rates, detunings and Rabi parameters share one angular-frequency unit; omega_mu_detuning is the probe "
    "detuning; w is a dimensionless emission probability per unit probe coupling squared";

struct Component {
  std::string label;
  SpectrumFunction f;
  double center;  // predicted
  double scale;   // rough half-width including Doppler broadening
};

// Area of f over [lo, hi] with breakpoints near the feature.
double piecewise_area(const SpectrumFunction& f, double lo, double hi, double center, double scale) {
  std::vector<double> cuts{lo, hi};
  for (double m : {-20.0, -2.0, 0.0, 2.0, 20.0}) {
    const double x = center + m * scale;
    if (x > lo && x < hi) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) {
      area += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 20, 1e-10);
    }
  }
  return area;
}

// Separately available component: measure on its own function.
ComponentSummary measure_component(const Component& c) {
  ComponentSummary s{c.label, c.center, c.center, 2.0 * c.scale, c.f(c.center), 0.0, false};
  try {
    const double reach = 40.0 * c.scale;
    const WidthMeasurement m = measure_fwhm(c.f, c.center - reach, c.center + reach);
    s.center = m.peak.position;
    s.peak_position = m.peak.position;
    s.peak = m.peak.value;
    s.fwhm = m.fwhm();
    s.area = integrated_intensity(c.f, {-inf, inf, s.center, c.scale});
    s.measured = true;
  } catch (const RegimeError&) {
    s.area = piecewise_area(c.f, -inf, inf, c.center, c.scale);
  }
  return s;
}

void sort_components(std::vector<ComponentSummary>& components) {
  std::stable_sort(components.begin(), components.end(),
                   [](const ComponentSummary& a, const ComponentSummary& b) { return a.center < b.center; });
}

bool separated(const std::vector<ComponentSummary>& components) {
  for (std::size_t i = 0; i + 1 < components.size(); ++i) {
    const auto& a = components[i];
    const auto& b = components[i + 1];
    if (!(b.center - a.center > 0.5 * (a.fwhm + b.fwhm))) return false;
  }
  return true;
}

LineSummary base_summary(std::string job, const JobConfig& cfg, const std::optional<ThermalEnsemble>& ensemble) {
  LineSummary s{};
  s.job = std::move(job);
  s.kind = cfg.kind;
  const DriveField& drive = cfg.require_drive();
  s.regime = regime_ratios(cfg.require_scheme(), drive, ensemble.value_or(ThermalEnsemble(1.0)));
  s.doppler_ratios_defined = ensemble.has_value();
  if (!ensemble) {
    s.regime.detuning_over_doppler = inf;
    s.regime.field_over_doppler = inf;
    s.regime.triplet = cfg.require_drive().G() /
                       std::max({std::abs(drive.Omega()), cfg.scheme->gamma_m() + cfg.scheme->gamma_n(),
                                 cfg.scheme->gamma_l()});
  }
  s.weak_field_valid = s.regime.weak_field <= 0.1;
  return s;
}

SpectrumTable tabulate(const SpectrumFunction& f, const GridSpec& grid, unsigned threads) {
  SpectrumTable t{grid.points(), {}};
  t.w.resize(t.omega_mu.size());
  parallel_for(t.omega_mu.size(), threads, [&](std::size_t i) { t.w[i] = f(t.omega_mu[i]); });
  return t;
}

// ---- atom at rest -------------------------------------------------------

LineSummary spectrum_summary(const JobConfig& cfg) {
  const LevelScheme& scheme = cfg.require_scheme();
  const DriveField& drive = cfg.require_drive();
  const ProbeField& probe = cfg.require_probe();
  LineSummary s = base_summary("spectrum", cfg, std::nullopt);
  s.normalization = "w = 2 gamma_l * integral |a_l|^2 dt for an atom at rest, first order in G_mu, not normalized";

  const ProcessSigns sg = process_signs(cfg.kind);
  const DressedPair pair = dressed_exponents(scheme, drive.with_Omega(sg.drive * drive.Omega()));
  const double gl = scheme.gamma_l();
  const ProcessKind kind = cfg.kind;
  const SpectrumFunction f = [&, kind](double x) { return w_mu_exact(scheme, drive, probe, x, kind); };

  struct Line {
    std::string label;
    double center;
    double half_width;
  };
  std::array<Line, 2> lines{{{"alpha1", sg.probe * pair.alpha1.imag(), gl + pair.alpha1.real()},
                             {"alpha2", sg.probe * pair.alpha2.imag(), gl + pair.alpha2.real()}}};
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.center < b.center; });

  s.doublet_resolved = drive.G() > 0.0 && doublet_resolved(pair, gl);
  double split = 0.5 * (lines[0].center + lines[1].center);
  if (s.doublet_resolved) {
    split = boost::math::tools::brent_find_minima(f, lines[0].center, lines[1].center, 52).first;
  }

  for (std::size_t j = 0; j < 2; ++j) {
    const Line& line = lines[j];
    const double lo = j == 0 ? -inf : split;
    const double hi = j == 0 ? split : inf;
    // The total spectrum's maxima sit slightly off the dressed positions where
    // the two lines overlap, so `center` stays at Im alpha.
    ComponentSummary c{line.label, line.center, line.center, 2.0 * line.half_width, f(line.center), 0.0, false};
    if (s.doublet_resolved) {
      const double far = 30.0 * line.half_width;
      const double wlo = j == 0 ? line.center - far : split;
      const double whi = j == 0 ? split : line.center + far;
      try {
        const WidthMeasurement m = measure_fwhm(f, wlo, whi);
        c = {line.label, line.center, m.peak.position, m.fwhm(), m.peak.value, 0.0, true};
      } catch (const RegimeError&) {
      }
    }
    c.area = piecewise_area(f, lo, hi, line.center, line.half_width);
    s.components.push_back(c);
  }
  sort_components(s.components);
  return s;
}

// ---- Doppler-averaged jobs -------------------------------------------------

LineSummary summarize(LineSummary s, const std::vector<Component>& components) {
  for (const auto& c : components) s.components.push_back(measure_component(c));
  sort_components(s.components);
  s.doublet_resolved = separated(s.components);
  return s;
}

std::vector<Component> doppler_components(const JobConfig& cfg) {
  const LevelScheme& scheme = cfg.require_scheme();
  const DriveField& drive = cfg.require_drive();
  const ProbeField& probe = cfg.require_probe();
  const ThermalEnsemble& ensemble = cfg.require_ensemble();
  const ProcessKind kind = cfg.kind;
  const ProcessSigns sg = process_signs(kind);
  const double vbar = ensemble.vbar();
  const double q = effective_q(drive.k(), probe.k_mu(), probe.theta(), 1.0, kind).q;
  return {
      {"stepwise",
       [=](double x) { return doppler_weak_terms(scheme, drive, probe, ensemble, x, kind).stepwise; }, 0.0,
       scheme.gamma_l() + scheme.gamma_m() + probe.k_mu() * vbar},
      {"raman", [=](double x) { return doppler_weak_terms(scheme, drive, probe, ensemble, x, kind).raman; },
       sg.probe * sg.drive * drive.Omega(), scheme.gamma_l() + scheme.gamma_n() + q * vbar},
  };
}

std::vector<Component> doublet_components(const JobConfig& cfg) {
  const LevelScheme& scheme = cfg.require_scheme();
  const DriveField& drive = cfg.require_drive();
  const ProbeField& probe = cfg.require_probe();
  const ThermalEnsemble& ensemble = cfg.require_ensemble();
  const ProcessKind kind = cfg.kind;
  const ProcessSigns sg = process_signs(kind);
  const DriveField signed_drive = drive.with_Omega(sg.drive * drive.Omega());
  const DressedPair pair = dressed_exponents(scheme, signed_drive);
  const MemoryFactors M = memory_factors(signed_drive);
  const double vbar = ensemble.vbar();
  const double gl = scheme.gamma_l();
  auto scale = [&](complex alpha, double memory) {
    return gl + alpha.real() + effective_q(drive.k(), probe.k_mu(), probe.theta(), memory, kind).q * vbar;
  };
  return {
      {"first", [=](double x) { return doppler_strong_terms(scheme, drive, probe, ensemble, x, kind).first; },
       sg.probe * pair.alpha1.imag(), scale(pair.alpha1, M.M1)},
      {"second", [=](double x) { return doppler_strong_terms(scheme, drive, probe, ensemble, x, kind).second; },
       sg.probe * pair.alpha2.imag(), scale(pair.alpha2, M.M2)},
  };
}

double triplet_theta(const JobConfig& cfg) { return cfg.probe ? cfg.probe->theta() : 0.0; }

std::vector<Component> triplet_components(const JobConfig& cfg) {
  const LevelScheme& scheme = cfg.require_scheme();
  const DriveField& drive = cfg.require_drive();
  const ThermalEnsemble& ensemble = cfg.require_ensemble();
  const double theta = triplet_theta(cfg);
  const double scale = scheme.gamma_m() + scheme.gamma_n() + 2.0 * drive.k() * ensemble.vbar() * std::sin(0.5 * theta);
  const double Omega = drive.Omega();
  const double G2 = 2.0 * drive.G();
  return {
      {"lower", [=](double x) { return fluorescence_triplet_terms(scheme, drive, ensemble, theta, x).lower; },
       Omega - G2, scale},
      {"central", [=](double x) { return fluorescence_triplet_terms(scheme, drive, ensemble, theta, x).central; },
       Omega, scale},
      {"upper", [=](double x) { return fluorescence_triplet_terms(scheme, drive, ensemble, theta, x).upper; },
       Omega + G2, scale},
  };
}

LineSummary model_summary(ScanModel model, const JobConfig& cfg) {
  switch (model) {
    case ScanModel::Doppler: {
      LineSummary s = base_summary("doppler", cfg, cfg.require_ensemble());
      s.normalization = "Maxwell-averaged w without interference terms, not normalized";
      return summarize(std::move(s), doppler_components(cfg));
    }
    case ScanModel::Doublet: {
      LineSummary s = base_summary("doublet", cfg, cfg.require_ensemble());
      s.normalization = "Maxwell-averaged strong-field w without interference terms, not normalized";
      return summarize(std::move(s), doublet_components(cfg));
    }
    case ScanModel::Triplet: {
      LineSummary s = base_summary("triplet", cfg, cfg.require_ensemble());
      s.normalization = "fluorescence spectrum normalized to unit total area; component weights 1:2:1";
      return summarize(std::move(s), triplet_components(cfg));
    }
  }
  throw DomainError("unknown scan model");
}

SpectrumFunction model_total(ScanModel model, const JobConfig& cfg) {
  const LevelScheme scheme = cfg.require_scheme();
  const DriveField drive = cfg.require_drive();
  const ProcessKind kind = cfg.kind;
  switch (model) {
    case ScanModel::Doppler: {
      const ProbeField probe = cfg.require_probe();
      const ThermalEnsemble e = cfg.require_ensemble();
      return [=](double x) { return doppler_weak_doublet(scheme, drive, probe, e, x, kind); };
    }
    case ScanModel::Doublet: {
      const ProbeField probe = cfg.require_probe();
      const ThermalEnsemble e = cfg.require_ensemble();
      return [=](double x) { return doppler_strong_doublet(scheme, drive, probe, e, x, kind); };
    }
    case ScanModel::Triplet: {
      const ThermalEnsemble e = cfg.require_ensemble();
      const double theta = triplet_theta(cfg);
      return [=](double x) { return fluorescence_triplet(scheme, drive, e, theta, x); };
    }
  }
  throw DomainError("unknown scan model");
}

JobResult run_model_job(ScanModel model, const JobConfig& cfg, unsigned threads) {
  LineSummary summary = model_summary(model, cfg);
  SpectrumTable table = tabulate(model_total(model, cfg), cfg.require_grid(), threads);
  return {std::move(table), std::move(summary)};
}

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json summary_object(const LineSummary& s) {
  ordered_json components = ordered_json::array();
  for (const auto& c : s.components) {
    components.push_back({{"label", c.label},
                          {"center", finite_or_null(c.center)},
                          {"peak_position", finite_or_null(c.peak_position)},
                          {"fwhm", finite_or_null(c.fwhm)},
                          {"peak", finite_or_null(c.peak)},
                          {"area", finite_or_null(c.area)},
                          {"measured", c.measured}});
  }
  ordered_json regime = {{"weak_field", finite_or_null(s.regime.weak_field)},
                         {"detuning_over_doppler", finite_or_null(s.regime.detuning_over_doppler)},
                         {"field_over_doppler", finite_or_null(s.regime.field_over_doppler)},
                         {"triplet", finite_or_null(s.regime.triplet)}};
  return {{"schema", std::string(schema_version)},
          {"job", s.job},
          {"process", std::string(to_string(s.kind))},
          {"units", units_note},
          {"normalization", s.normalization},
          {"components", components},
          {"regime", regime},
          {"weak_field_valid", s.weak_field_valid},
          {"doublet_resolved", s.doublet_resolved}};
}

}  // namespace

JobResult run_spectrum_job(const JobConfig& cfg, unsigned threads) {
  const std::vector<double> grid = cfg.require_grid().points();
  const auto points = scan_spectrum(cfg.require_scheme(), cfg.require_drive(), cfg.require_probe(), grid, cfg.kind,
                                    threads);
  SpectrumTable table;
  for (const auto& p : points) {
    table.omega_mu.push_back(p.Omega_mu);
    table.w.push_back(p.w);
  }
  return {std::move(table), spectrum_summary(cfg)};
}

JobResult run_doppler_job(const JobConfig& cfg, unsigned threads) {
  return run_model_job(ScanModel::Doppler, cfg, threads);
}
JobResult run_doublet_job(const JobConfig& cfg, unsigned threads) {
  return run_model_job(ScanModel::Doublet, cfg, threads);
}
JobResult run_triplet_job(const JobConfig& cfg, unsigned threads) {
  return run_model_job(ScanModel::Triplet, cfg, threads);
}

ScanResult run_theta_scan(const JobConfig& cfg, unsigned threads) {
  if (cfg.thetas.size() < 2) throw ConfigError("scan: needs at least two 'thetas'");
  const ProbeField probe = cfg.scan_model == ScanModel::Triplet && !cfg.probe ? ProbeField(0.0)
                                                                               : cfg.require_probe();
  std::vector<LineSummary> per_theta(cfg.thetas.size());
  parallel_for(cfg.thetas.size(), threads, [&](std::size_t i) {
    JobConfig local = cfg;
    local.probe = probe.with_theta(cfg.thetas[i]);
    per_theta[i] = model_summary(cfg.scan_model, local);
  });
  ScanResult result{cfg.scan_model, {}};
  for (std::size_t i = 0; i < cfg.thetas.size(); ++i) {
    for (const auto& c : per_theta[i].components) {
      result.rows.push_back({cfg.thetas[i], c.label, c.center, c.fwhm, c.area});
    }
  }
  return result;
}

CertifyResult run_certify(const JobConfig& cfg, unsigned threads) {
  if (cfg.certify_cases.empty()) throw ConfigError("certify: needs a 'certify' block");
  CertifyResult result{std::vector<CertificationReport>(cfg.certify_cases.size()), true};
  parallel_for(cfg.certify_cases.size(), threads, [&](std::size_t i) {
    const auto& entry = cfg.certify_cases[i];
    result.reports[i] = certify(entry.form, entry.parameters, entry.tolerance);
  });
  for (const auto& r : result.reports) result.all_passed = result.all_passed && r.passed();
  return result;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string format_spectrum_csv(const SpectrumTable& table) {
  std::string out = "omega_mu_detuning,w\n";
  for (std::size_t i = 0; i < table.omega_mu.size(); ++i) {
    out += format_number(table.omega_mu[i]);
    out += ',';
    out += format_number(table.w[i]);
    out += '\n';
  }
  return out;
}

std::string format_summary_json(const LineSummary& summary) { return summary_object(summary).dump(2) + "\n"; }

std::string format_job_json(const JobResult& result) {
  ordered_json x = ordered_json::array();
  ordered_json w = ordered_json::array();
  for (std::size_t i = 0; i < result.table.omega_mu.size(); ++i) {
    x.push_back(finite_or_null(result.table.omega_mu[i]));
    w.push_back(finite_or_null(result.table.w[i]));
  }
  ordered_json j = {{"schema", std::string(schema_version)},
                    {"summary", summary_object(result.summary)},
                    {"spectrum", {{"omega_mu_detuning", x}, {"w", w}}}};
  return j.dump(2) + "\n";
}

std::string format_scan_csv(const ScanResult& scan) {
  std::string out = "theta,component,center,fwhm,area\n";
  for (const auto& r : scan.rows) {
    out += format_number(r.theta) + "," + r.component + "," + format_number(r.center) + "," +
           format_number(r.fwhm) + "," + format_number(r.area) + "\n";
  }
  return out;
}

std::string format_scan_json(const ScanResult& scan) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : scan.rows) {
    rows.push_back({{"theta", r.theta},
                    {"component", r.component},
                    {"center", finite_or_null(r.center)},
                    {"fwhm", finite_or_null(r.fwhm)},
                    {"area", finite_or_null(r.area)}});
  }
  ordered_json j = {{"schema", std::string(schema_version)},
                    {"job", "scan"},
                    {"model", std::string(to_string(scan.model))},
                    {"units", units_note},
                    {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string format_certify_json(const CertifyResult& result) {
  ordered_json records = ordered_json::array();
  for (const auto& r : result.reports) records.push_back(ordered_json::parse(format_report_record(r)));
  ordered_json j = {{"schema", std::string(schema_version)},
                    {"job", "certify"},
                    {"all_passed", result.all_passed},
                    {"records", records}};
  return j.dump(2) + "\n";
}

std::string format_certify_csv(const CertifyResult& result) {
  std::string out = "id,outcome,max_deviation,tolerance,points\n";
  for (const auto& r : result.reports) {
    out += std::string(to_string(r.form)) + "," + std::string(to_string(r.outcome)) + "," +
           format_number(r.max_deviation) + "," + format_number(r.tolerance) + "," + std::to_string(r.points) + "\n";
  }
  return out;
}

}  // namespace dressline::cli
