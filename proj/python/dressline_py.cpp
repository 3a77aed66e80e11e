#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dressline/cli/config.hpp"
#include "dressline/cli/jobs.hpp"
#include "dressline/core_model.hpp"
#include "dressline/doppler_average.hpp"
#include "dressline/dressed_dynamics.hpp"
#include "dressline/oracle.hpp"
#include "dressline/stationary_spectrum.hpp"

namespace py = pybind11;
using namespace dressline;

namespace {

ProcessKind kind_arg(const std::string& name) { return process_kind_from_string(name); }

py::array_t<double> scan_array(const LevelScheme& scheme, const DriveField& drive, const ProbeField& probe,
                               py::array_t<double, py::array::c_style | py::array::forcecast> grid,
                               const std::string& process, unsigned threads) {
  const auto view = grid.unchecked<1>();
  std::vector<double> points(view.data(0), view.data(0) + view.shape(0));
  std::vector<SpectrumPoint> spectrum;
  {
    py::gil_scoped_release release;
    spectrum = scan_spectrum(scheme, drive, probe, points, kind_arg(process), threads);
  }
  py::array_t<double> out(static_cast<py::ssize_t>(spectrum.size()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < spectrum.size(); ++i) w(static_cast<py::ssize_t>(i)) = spectrum[i].w;
  return out;
}

py::dict summary_dict(const cli::LineSummary& s) {
  py::list components;
  for (const auto& c : s.components) {
    py::dict d;
    d["label"] = c.label;
    d["center"] = c.center;
    d["peak_position"] = c.peak_position;
    d["fwhm"] = c.fwhm;
    d["peak"] = c.peak;
    d["area"] = c.area;
    d["measured"] = c.measured;
    components.append(d);
  }
  py::dict d;
  d["job"] = s.job;
  d["process"] = std::string(to_string(s.kind));
  d["components"] = components;
  d["weak_field_valid"] = s.weak_field_valid;
  d["doublet_resolved"] = s.doublet_resolved;
  d["normalization"] = s.normalization;
  return d;
}

py::tuple job_tuple(const cli::JobResult& r) {
  return py::make_tuple(py::array(py::cast(r.table.omega_mu)), py::array(py::cast(r.table.w)),
                        summary_dict(r.summary));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Probe-field line shapes of a three-level system with one strongly driven transition";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<LevelScheme>(m, "LevelScheme")
      .def(py::init<double, double, double>(), py::arg("gamma_m"), py::arg("gamma_n"), py::arg("gamma_l"))
      .def_property_readonly("gamma_m", &LevelScheme::gamma_m)
      .def_property_readonly("gamma_n", &LevelScheme::gamma_n)
      .def_property_readonly("gamma_l", &LevelScheme::gamma_l);

  py::class_<DriveField>(m, "DriveField")
      .def(py::init<double, double, double>(), py::arg("G"), py::arg("Omega"), py::arg("k") = 0.0)
      .def_property_readonly("G", &DriveField::G)
      .def_property_readonly("Omega", &DriveField::Omega)
      .def_property_readonly("k", &DriveField::k);

  py::class_<ProbeField>(m, "ProbeField")
      .def(py::init<double, double, double>(), py::arg("G_mu"), py::arg("k_mu") = 0.0, py::arg("theta") = 0.0)
      .def_property_readonly("G_mu", &ProbeField::G_mu)
      .def_property_readonly("k_mu", &ProbeField::k_mu)
      .def_property_readonly("theta", &ProbeField::theta);

  py::class_<ThermalEnsemble>(m, "ThermalEnsemble")
      .def(py::init<double>(), py::arg("vbar"))
      .def_static("from_temperature", &ThermalEnsemble::from_temperature, py::arg("temperature"), py::arg("mass"))
      .def_property_readonly("vbar", &ThermalEnsemble::vbar);

  py::class_<MemoryFactors>(m, "MemoryFactors")
      .def_readonly("M1", &MemoryFactors::M1)
      .def_readonly("M2", &MemoryFactors::M2);

  py::class_<DressedPair>(m, "DressedPair")
      .def_readonly("alpha1", &DressedPair::alpha1)
      .def_readonly("alpha2", &DressedPair::alpha2)
      .def_readonly("memory", &DressedPair::memory)
      .def_readonly("confluent", &DressedPair::confluent);

  m.def("dressed_exponents", &dressed_exponents, py::arg("scheme"), py::arg("drive"));
  m.def("amplitude_m", &amplitude_m, py::arg("pair"), py::arg("t"));
  m.def("amplitude_n", &amplitude_n, py::arg("pair"), py::arg("t"));
  m.def("memory_factors", &memory_factors, py::arg("drive"));

  m.def(
      "w_mu_exact",
      [](const LevelScheme& s, const DriveField& d, const ProbeField& p, double Omega_mu, const std::string& process) {
        return w_mu_exact(s, d, p, Omega_mu, kind_arg(process));
      },
      py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("Omega_mu"),
      py::arg("process") = "raman_upper");
  m.def(
      "w_mu_weak",
      [](const LevelScheme& s, const DriveField& d, const ProbeField& p, double Omega_mu, bool interference,
         const std::string& process) { return w_mu_weak(s, d, p, Omega_mu, interference, kind_arg(process)).w; },
      py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("Omega_mu"), py::arg("interference") = true,
      py::arg("process") = "raman_upper");
  m.def("scan_spectrum", &scan_array, py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("grid"),
        py::arg("process") = "raman_upper", py::arg("threads") = 1);

  m.def(
      "effective_q",
      [](double k, double k_mu, double theta, double M, const std::string& process) {
        return effective_q(k, k_mu, theta, M, kind_arg(process)).q;
      },
      py::arg("k"), py::arg("k_mu"), py::arg("theta"), py::arg("M"), py::arg("process") = "raman_upper");
  m.def("doppler_averaged_resonance", &doppler_averaged_resonance, py::arg("c"), py::arg("doppler_scale"));
  m.def(
      "doppler_weak_doublet",
      [](const LevelScheme& s, const DriveField& d, const ProbeField& p, const ThermalEnsemble& e, double Omega_mu,
         const std::string& process) { return doppler_weak_doublet(s, d, p, e, Omega_mu, kind_arg(process)); },
      py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("ensemble"), py::arg("Omega_mu"),
      py::arg("process") = "raman_upper");
  m.def(
      "doppler_strong_doublet",
      [](const LevelScheme& s, const DriveField& d, const ProbeField& p, const ThermalEnsemble& e, double Omega_mu,
         const std::string& process) { return doppler_strong_doublet(s, d, p, e, Omega_mu, kind_arg(process)); },
      py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("ensemble"), py::arg("Omega_mu"),
      py::arg("process") = "raman_upper");
  m.def("fluorescence_triplet", &fluorescence_triplet, py::arg("scheme"), py::arg("drive"), py::arg("ensemble"),
        py::arg("theta"), py::arg("Omega_mu"));

  m.def(
      "w_mu_time_domain",
      [](const LevelScheme& s, const DriveField& d, const ProbeField& p, double Omega_mu, const Velocity& v,
         double rel_tol, const std::string& process) {
        OdeSettings settings;
        settings.rel_tol = rel_tol;
        return w_mu_time_domain(s, d, p, Omega_mu, v, settings, kind_arg(process)).w;
      },
      py::arg("scheme"), py::arg("drive"), py::arg("probe"), py::arg("Omega_mu"),
      py::arg("velocity") = Velocity{0.0, 0.0, 0.0}, py::arg("rel_tol") = 1e-11, py::arg("process") = "raman_upper");

  m.def(
      "run_job",
      [](const std::string& job, const std::string& config_text, unsigned threads) {
        const cli::JobConfig config = cli::parse_config(config_text);
        py::gil_scoped_release release;
        cli::JobResult r;
        if (job == "spectrum") r = cli::run_spectrum_job(config, threads);
        else if (job == "doppler") r = cli::run_doppler_job(config, threads);
        else if (job == "doublet") r = cli::run_doublet_job(config, threads);
        else if (job == "triplet") r = cli::run_triplet_job(config, threads);
        else throw DomainError("unknown job '" + job + "'");
        py::gil_scoped_acquire acquire;
        return job_tuple(r);
      },
      py::arg("job"), py::arg("config"), py::arg("threads") = 1,
      "Runs a spectrum/doppler/doublet/triplet job from JSON config text; returns (omega_mu, w, summary).");

  m.def(
      "certify",
      [](const std::string& config_text, unsigned threads) {
        const cli::JobConfig config = cli::parse_config(config_text);
        cli::CertifyResult r;
        {
          py::gil_scoped_release release;
          r = cli::run_certify(config, threads);
        }
        py::list records;
        for (const auto& rep : r.reports) {
          py::dict d;
          d["id"] = std::string(to_string(rep.form));
          d["outcome"] = std::string(to_string(rep.outcome));
          d["max_deviation"] = rep.max_deviation;
          d["tolerance"] = rep.tolerance;
          d["note"] = rep.note;
          records.append(d);
        }
        return records;
      },
      py::arg("config"), py::arg("threads") = 1);
}
