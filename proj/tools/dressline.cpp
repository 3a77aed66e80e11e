// Command-line front end: dressline <job> --config FILE [--out DIR] [--format csv|json] [--threads N]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dressline/cli/config.hpp"
#include "dressline/cli/jobs.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dressline;
using namespace dressline::cli;

enum ExitCode { Success = 0, RegimeFailure = 1, UsageError = 2 };

int report_error(std::string_view kind, std::string_view message, int code) {
  nlohmann::ordered_json record = {{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
  std::cerr << record.dump() << '\n';
  return code;
}

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
};

class Writer {
 public:
  Writer(const Options& opts, const JobConfig& cfg) {
    if (!opts.out.empty()) {
      dir_ = opts.out;
    } else if (cfg.output_dir) {
      dir_ = *cfg.output_dir;
    }
    if (dir_) fs::create_directories(*dir_);
  }

  void emit(const std::string& filename, const std::string& content) const {
    if (!dir_) {
      std::cout << content;
      return;
    }
    const fs::path path = *dir_ / filename;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
  }

  bool to_files() const { return dir_.has_value(); }

 private:
  std::optional<fs::path> dir_;
};

int run(const std::string& job, const Options& opts) {
  const JobConfig cfg = load_config(opts.config);
  const Writer writer(opts, cfg);
  const bool json = opts.format == "json";

  if (job == "scan") {
    const ScanResult scan = run_theta_scan(cfg, opts.threads);
    writer.emit(json ? "scan.json" : "scan.csv", json ? format_scan_json(scan) : format_scan_csv(scan));
    return Success;
  }
  if (job == "certify") {
    const CertifyResult result = run_certify(cfg, opts.threads);
    writer.emit(json ? "certify.json" : "certify.csv",
                json ? format_certify_json(result) : format_certify_csv(result));
    if (!result.all_passed) {
      return report_error("certification", "one or more closed forms did not pass; see the report", RegimeFailure);
    }
    return Success;
  }

  JobResult result;
  if (job == "spectrum") {
    result = run_spectrum_job(cfg, opts.threads);
  } else if (job == "doppler") {
    result = run_doppler_job(cfg, opts.threads);
  } else if (job == "doublet") {
    result = run_doublet_job(cfg, opts.threads);
  } else {
    result = run_triplet_job(cfg, opts.threads);
  }
  if (json) {
    writer.emit(job + ".json", format_job_json(result));
  } else {
    writer.emit(job + ".csv", format_spectrum_csv(result.table));
    if (writer.to_files()) writer.emit(job + ".summary.json", format_summary_json(result.summary));
  }
  return Success;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral line shapes of a strongly driven three-level atom"};
  app.require_subcommand(1);
  Options opts;

  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"spectrum", "Emission spectrum of an atom at rest, exact in the drive field"},
      {"doppler", "Doppler-averaged weak-field doublet"},
      {"doublet", "Doppler-averaged strong-field doublet"},
      {"triplet", "Doppler-averaged fluorescence triplet on the driven transition"},
      {"scan", "Observation-angle scan of component centers, widths and areas"},
      {"certify", "Compare closed forms against the numerical oracles"},
  };
  for (const auto& [name, help] : jobs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON job configuration")->required();
    sub->add_option("--out", opts.out, "Output directory (default: standard output)");
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), UsageError);
  }

  const std::string job = app.get_subcommands().front()->get_name();
  try {
    return run(job, opts);
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), UsageError);
  } catch (const RegimeError& e) {
    return report_error("regime", e.what(), RegimeFailure);
  } catch (const ConvergenceError& e) {
    return report_error("convergence", e.what(), RegimeFailure);
  } catch (const DomainError& e) {
    return report_error("domain", e.what(), UsageError);
  } catch (const std::exception& e) {
    return report_error("io", e.what(), UsageError);
  }
}
