#include "dressline/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "dressline/stationary_spectrum.hpp"
#include "json.hpp"

namespace dressline::cli {
namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
}

void reject_unknown(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

double number(const json& j, std::string_view where, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& j, std::string_view where, const char* key, double fallback) {
  return j.contains(key) ? number(j, where, key) : fallback;
}

bool boolean_or(const json& j, std::string_view where, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string(where) + "." + key + ": expected true or false");
  return j.at(key).get<bool>();
}

std::string text(const json& j, std::string_view where, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing '" + key + "'");
  if (!j.at(key).is_string()) throw ConfigError(std::string(where) + "." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

std::size_t count_of(const json& j, std::string_view where, const char* key) {
  const double c = number(j, where, key);
  if (c != static_cast<double>(static_cast<long long>(c)) || c < 0) {
    throw ConfigError(std::string(where) + "." + key + ": expected a non-negative integer");
  }
  return static_cast<std::size_t>(c);
}

// Builds a physics object, turning its DomainError into a located ConfigError.
template <class F>
auto located(std::string_view where, F&& make) {
  try {
    return make();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

LevelScheme parse_scheme(const json& j) {
  constexpr std::string_view where = "scheme";
  require_object(j, where);
  reject_unknown(j, where, {"gamma_m", "gamma_n", "gamma_l", "omega_mn", "omega_ml"});
  return located(where, [&] {
    LevelScheme s(number(j, where, "gamma_m"), number(j, where, "gamma_n"), number(j, where, "gamma_l"));
    const bool has_mn = j.contains("omega_mn");
    const bool has_ml = j.contains("omega_ml");
    if (has_mn != has_ml) throw ConfigError("scheme: omega_mn and omega_ml must be given together");
    if (has_mn) s = s.with_frequencies(number(j, where, "omega_mn"), number(j, where, "omega_ml"));
    return s;
  });
}

DriveField parse_drive(const json& j) {
  constexpr std::string_view where = "drive";
  require_object(j, where);
  reject_unknown(j, where, {"G", "Omega", "k"});
  return located(where, [&] {
    return DriveField(number(j, where, "G"), number(j, where, "Omega"), number_or(j, where, "k", 0.0));
  });
}

ProbeField parse_probe(const json& j) {
  constexpr std::string_view where = "probe";
  require_object(j, where);
  reject_unknown(j, where, {"G_mu", "k_mu", "theta"});
  return located(where, [&] {
    return ProbeField(number(j, where, "G_mu"), number_or(j, where, "k_mu", 0.0),
                      number_or(j, where, "theta", 0.0));
  });
}

ThermalEnsemble parse_ensemble(const json& j) {
  constexpr std::string_view where = "ensemble";
  require_object(j, where);
  reject_unknown(j, where, {"vbar", "temperature", "mass"});
  const bool has_vbar = j.contains("vbar");
  const bool has_thermal = j.contains("temperature") || j.contains("mass");
  if (has_vbar == has_thermal) {
    throw ConfigError("ensemble: give either 'vbar' or both 'temperature' and 'mass'");
  }
  return located(where, [&] {
    if (has_vbar) return ThermalEnsemble(number(j, where, "vbar"));
    return ThermalEnsemble::from_temperature(number(j, where, "temperature"), number(j, where, "mass"));
  });
}

GridSpec parse_grid(const json& j, std::string_view where) {
  require_object(j, where);
  reject_unknown(j, where, {"min", "max", "count"});
  GridSpec g{number(j, where, "min"), number(j, where, "max"), count_of(j, where, "count")};
  if (g.count < 2) throw ConfigError(std::string(where) + ".count: must be >= 2");
  if (!(g.max > g.min)) throw ConfigError(std::string(where) + ": max must exceed min");
  return g;
}

std::vector<double> parse_thetas(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("thetas: expected numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    const GridSpec g = parse_grid(j, "thetas");
    out = g.points();
  } else {
    throw ConfigError("thetas: expected an array or a {min, max, count} object");
  }
  for (double t : out) {
    if (!(t >= 0.0 && t <= constants::pi)) throw ConfigError("thetas: values must lie in [0, pi]");
  }
  return out;
}

ScanModel parse_scan_model(const json& j) {
  require_object(j, "scan");
  reject_unknown(j, "scan", {"model"});
  const std::string m = text(j, "scan", "model");
  if (m == "doppler") return ScanModel::Doppler;
  if (m == "doublet") return ScanModel::Doublet;
  if (m == "triplet") return ScanModel::Triplet;
  throw ConfigError("scan.model: expected doppler, doublet or triplet");
}

ProcessKind parse_process(const json& j, std::string_view where) {
  if (!j.is_string()) throw ConfigError(std::string(where) + ": expected a string");
  return located(where, [&] { return process_kind_from_string(j.get<std::string>()); });
}

OdeSettings parse_ode(const json& j) {
  constexpr std::string_view where = "certify.ode";
  require_object(j, where);
  reject_unknown(j, where, {"rel_tol", "abs_tol", "horizon", "order", "verify", "verify_tolerance"});
  OdeSettings s;
  s.rel_tol = number_or(j, where, "rel_tol", s.rel_tol);
  s.abs_tol = number_or(j, where, "abs_tol", s.abs_tol);
  if (j.contains("horizon")) s.horizon = number(j, where, "horizon");
  if (j.contains("order")) {
    const std::string o = text(j, where, "order");
    if (o == "rkf78") {
      s.order = IntegratorOrder::Fehlberg78;
    } else if (o == "dopri5") {
      s.order = IntegratorOrder::DormandPrince5;
    } else {
      throw ConfigError("certify.ode.order: expected rkf78 or dopri5");
    }
  }
  s.verify = boolean_or(j, where, "verify", s.verify);
  s.verify_tolerance = number_or(j, where, "verify_tolerance", s.verify_tolerance);
  located(where, [&] { s.validate(); return 0; });
  return s;
}

QuadratureSettings parse_quadrature(const json& j) {
  constexpr std::string_view where = "certify.quadrature";
  require_object(j, where);
  reject_unknown(j, where, {"order", "dimensions", "doubling", "doubling_tolerance"});
  QuadratureSettings s;
  if (j.contains("order")) s.order = count_of(j, where, "order");
  if (j.contains("dimensions")) s.dimensions = static_cast<int>(count_of(j, where, "dimensions"));
  s.doubling = boolean_or(j, where, "doubling", s.doubling);
  s.doubling_tolerance = number_or(j, where, "doubling_tolerance", s.doubling_tolerance);
  located(where, [&] { s.validate(); return 0; });
  return s;
}

struct Defaults {
  ProcessKind kind;
  const std::optional<LevelScheme>& scheme;
  const std::optional<DriveField>& drive;
  const std::optional<ProbeField>& probe;
  const std::optional<ThermalEnsemble>& ensemble;
};

template <class T>
T inherit(const json& j, const char* key, const std::optional<T>& fallback, T (*parse)(const json&),
          const std::string& where) {
  if (j.contains(key)) return parse(j.at(key));
  if (fallback) return *fallback;
  throw ConfigError(where + ": no '" + key + "' block here or at top level");
}

CertifyCaseSpec parse_case(const json& j, std::size_t index, const Defaults& d, const OdeSettings& ode,
                           const QuadratureSettings& quad) {
  const std::string where = "certify.cases[" + std::to_string(index) + "]";
  require_object(j, where);
  reject_unknown(j, where,
                 {"id", "tolerance", "process", "scheme", "drive", "probe", "ensemble", "grid", "points"});
  const ClosedForm form = located(where, [&] { return closed_form_from_id(text(j, where, "id")); });
  const double tolerance = number(j, where, "tolerance");
  if (!(tolerance > 0.0)) throw ConfigError(where + ".tolerance: must be > 0");

  const ProcessKind kind = j.contains("process") ? parse_process(j.at("process"), where + ".process") : d.kind;
  // The time-domain comparisons do not need a thermal ensemble.
  const bool needs_ensemble = form != ClosedForm::Eq2_6 && form != ClosedForm::Eq2_7;
  const ThermalEnsemble ensemble = needs_ensemble || j.contains("ensemble") || d.ensemble
                                       ? inherit(j, "ensemble", d.ensemble, parse_ensemble, where)
                                       : ThermalEnsemble(1.0);
  CertificationCase c{inherit(j, "scheme", d.scheme, parse_scheme, where),
                      inherit(j, "drive", d.drive, parse_drive, where),
                      inherit(j, "probe", d.probe, parse_probe, where),
                      ensemble,
                      kind,
                      {},
                      ode,
                      quad};
  if (j.contains("grid") && j.contains("points")) throw ConfigError(where + ": give 'grid' or 'points', not both");
  if (j.contains("grid")) c.grid = parse_grid(j.at("grid"), where + ".grid").points();
  if (j.contains("points")) {
    const json& p = j.at("points");
    if (!p.is_array() || p.empty()) throw ConfigError(where + ".points: expected a non-empty array");
    for (const auto& v : p) {
      if (!v.is_number()) throw ConfigError(where + ".points: expected numbers");
      c.grid.push_back(v.get<double>());
    }
  }
  return {form, tolerance, std::move(c)};
}

}  // namespace

std::vector<double> GridSpec::points() const { return linear_grid(min, max, count); }

std::string_view to_string(ScanModel model) noexcept {
  switch (model) {
    case ScanModel::Doppler: return "doppler";
    case ScanModel::Doublet: return "doublet";
    case ScanModel::Triplet: return "triplet";
  }
  return "doppler";
}

const LevelScheme& JobConfig::require_scheme() const {
  if (!scheme) throw ConfigError("config: this job needs a 'scheme' block");
  return *scheme;
}
const DriveField& JobConfig::require_drive() const {
  if (!drive) throw ConfigError("config: this job needs a 'drive' block");
  return *drive;
}
const ProbeField& JobConfig::require_probe() const {
  if (!probe) throw ConfigError("config: this job needs a 'probe' block");
  return *probe;
}
const ThermalEnsemble& JobConfig::require_ensemble() const {
  if (!ensemble) throw ConfigError("config: this job needs an 'ensemble' block");
  return *ensemble;
}
const GridSpec& JobConfig::require_grid() const {
  if (!grid) throw ConfigError("config: this job needs a 'grid' block");
  return *grid;
}

JobConfig parse_config(std::string_view source) {
  json root;
  try {
    root = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  require_object(root, "config");
  reject_unknown(root, "config",
                 {"schema", "process", "scheme", "drive", "probe", "ensemble", "grid", "thetas", "scan", "certify",
                  "output"});
  const std::string schema = text(root, "config", "schema");
  if (schema != schema_version) {
    throw ConfigError("config: unsupported schema '" + schema + "' (expected '" + std::string(schema_version) + "')");
  }

  JobConfig cfg;
  if (root.contains("process")) cfg.kind = parse_process(root.at("process"), "process");
  if (root.contains("scheme")) cfg.scheme = parse_scheme(root.at("scheme"));
  if (root.contains("drive")) cfg.drive = parse_drive(root.at("drive"));
  if (root.contains("probe")) cfg.probe = parse_probe(root.at("probe"));
  if (root.contains("ensemble")) cfg.ensemble = parse_ensemble(root.at("ensemble"));
  if (root.contains("grid")) cfg.grid = parse_grid(root.at("grid"), "grid");
  if (root.contains("thetas")) cfg.thetas = parse_thetas(root.at("thetas"));
  if (root.contains("scan")) cfg.scan_model = parse_scan_model(root.at("scan"));
  if (root.contains("output")) {
    const json& out = root.at("output");
    require_object(out, "output");
    reject_unknown(out, "output", {"dir"});
    cfg.output_dir = text(out, "output", "dir");
  }

  if (root.contains("certify")) {
    const json& cert = root.at("certify");
    require_object(cert, "certify");
    reject_unknown(cert, "certify", {"suite", "cases", "ode", "quadrature"});
    const bool has_suite = cert.contains("suite");
    const bool has_cases = cert.contains("cases");
    if (has_suite == has_cases) throw ConfigError("certify: give exactly one of 'suite' or 'cases'");
    if (has_suite) {
      if (text(cert, "certify", "suite") != "default") throw ConfigError("certify.suite: only 'default' is known");
      if (cert.contains("ode") || cert.contains("quadrature")) {
        throw ConfigError("certify: the default suite carries its own oracle settings");
      }
      cfg.certify_cases = default_certify_suite();
    } else {
      const OdeSettings ode = cert.contains("ode") ? parse_ode(cert.at("ode")) : OdeSettings{};
      const QuadratureSettings quad =
          cert.contains("quadrature") ? parse_quadrature(cert.at("quadrature")) : QuadratureSettings{};
      const json& cases = cert.at("cases");
      if (!cases.is_array() || cases.empty()) throw ConfigError("certify.cases: expected a non-empty array");
      const Defaults d{cfg.kind, cfg.scheme, cfg.drive, cfg.probe, cfg.ensemble};
      for (std::size_t i = 0; i < cases.size(); ++i) cfg.certify_cases.push_back(parse_case(cases[i], i, d, ode, quad));
    }
  }
  return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<CertifyCaseSpec> default_certify_suite() {
  std::vector<CertifyCaseSpec> suite;
  const LevelScheme unequal(1.0, 0.5, 0.3);

  OdeSettings ode;
  ode.verify = true;
  suite.push_back({ClosedForm::Eq2_6, 1e-6,
                   {unequal, DriveField(2.0, 3.0), ProbeField(1.0), ThermalEnsemble(1.0),
                    ProcessKind::RamanUpperIntermediate, {}, ode, {}}});
  suite.push_back({ClosedForm::Eq2_7, 1e-4,
                   {unequal, DriveField(0.01, 10.0), ProbeField(1.0), ThermalEnsemble(1.0),
                    ProcessKind::RamanUpperIntermediate, {}, ode, {}}});

  QuadratureSettings fine;
  fine.order = 4096;
  fine.doubling = true;
  suite.push_back({ClosedForm::Eq3_2, 1e-8,
                   {unequal, DriveField(0.1, 100.0, 1.0), ProbeField(1.0, 1.2, constants::pi / 3.0),
                    ThermalEnsemble(5.0), ProcessKind::RamanUpperIntermediate, {}, {}, fine}});

  suite.push_back({ClosedForm::Eq3_3, 1e-2,
                   {LevelScheme(0.01, 0.01, 0.01), DriveField(0.1, 200.0, 1.0),
                    ProbeField(1.0, 1.0, constants::pi / 2.0), ThermalEnsemble(10.0),
                    ProcessKind::RamanUpperIntermediate, {}, {}, {}}});

  QuadratureSettings medium;
  medium.order = 256;
  medium.doubling = true;
  suite.push_back({ClosedForm::Eq4_2, 1e-6,
                   {LevelScheme(1.0, 1.0, 0.5), DriveField(50.0, 20.0, 1.0),
                    ProbeField(1.0, 1.5, constants::pi / 4.0), ThermalEnsemble(2.0),
                    ProcessKind::RamanUpperIntermediate, {}, {}, medium}});

  QuadratureSettings coarse;
  coarse.order = 128;
  coarse.doubling = true;
  suite.push_back({ClosedForm::Eq5_2, 1e-6,
                   {LevelScheme(1.0, 1.0, 0.5), DriveField(100.0, 1.0, 1.0),
                    ProbeField(1.0, 1.0, constants::pi / 3.0), ThermalEnsemble(1.0),
                    ProcessKind::RamanUpperIntermediate, {}, {}, coarse}});
  return suite;
}

}  // namespace dressline::cli
