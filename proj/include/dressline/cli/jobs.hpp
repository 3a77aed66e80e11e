#pragma once

// Batch jobs behind the `dressline` command line tool. Each job is a pure
// function of its config; formatting is separate so the output text is a
// deterministic function of the job result.

#include <string>
#include <vector>

#include "dressline/cli/config.hpp"
#include "dressline/doppler_average.hpp"
#include "dressline/oracle.hpp"

namespace dressline::cli {

struct ComponentSummary {
  std::string label;
  double center;         // component position
  double peak_position;  // measured maximum of the component's profile
  double fwhm;
  double peak;
  double area;
  bool measured;  // false: width and peak position are predicted values
};

struct LineSummary {
  std::string job;
  ProcessKind kind;
  std::vector<ComponentSummary> components;  // sorted by center
  RegimeRatios regime;
  bool doppler_ratios_defined;  // false for jobs without an ensemble
  bool weak_field_valid;        // G / |Omega - i gamma| <= 0.1
  bool doublet_resolved;
  std::string normalization;
};

struct SpectrumTable {
  std::vector<double> omega_mu;
  std::vector<double> w;
};

struct JobResult {
  SpectrumTable table;
  LineSummary summary;
};

// Atom at rest, exact in G.
JobResult run_spectrum_job(const JobConfig& config, unsigned threads = 1);
// Doppler-averaged weak-field doublet.
JobResult run_doppler_job(const JobConfig& config, unsigned threads = 1);
// Doppler-averaged strong-field doublet.
JobResult run_doublet_job(const JobConfig& config, unsigned threads = 1);
// Doppler-averaged fluorescence triplet on the driven transition.
JobResult run_triplet_job(const JobConfig& config, unsigned threads = 1);

struct ScanRow {
  double theta;
  std::string component;
  double center;
  double fwhm;
  double area;
};

struct ScanResult {
  ScanModel model;
  std::vector<ScanRow> rows;  // theta-major, components in center order
};

ScanResult run_theta_scan(const JobConfig& config, unsigned threads = 1);

struct CertifyResult {
  std::vector<CertificationReport> reports;
  bool all_passed;
};

CertifyResult run_certify(const JobConfig& config, unsigned threads = 1);

// Shortest round-trip decimal form (std::to_chars); non-finite values print
// as nan, inf, -inf.
std::string format_number(double value);

std::string format_spectrum_csv(const SpectrumTable& table);
std::string format_summary_json(const LineSummary& summary);
std::string format_job_json(const JobResult& result);
std::string format_scan_csv(const ScanResult& scan);
std::string format_scan_json(const ScanResult& scan);
std::string format_certify_json(const CertifyResult& result);
std::string format_certify_csv(const CertifyResult& result);

}  // namespace dressline::cli
