#pragma once

// Job configuration for the batch front end.
//
// Configs are JSON documents with a mandatory `"schema": "dressline/1"` field.
// Every object is closed: an unrecognised key is a ConfigError. See README.md
// for the full key list.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dressline/core_model.hpp"
#include "dressline/oracle.hpp"

namespace dressline::cli {

inline constexpr std::string_view schema_version = "dressline/1";

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct GridSpec {
  double min;
  double max;
  std::size_t count;  // >= 2

  std::vector<double> points() const;
};

enum class ScanModel { Doppler, Doublet, Triplet };
std::string_view to_string(ScanModel model) noexcept;

struct CertifyCaseSpec {
  ClosedForm form;
  double tolerance;
  CertificationCase parameters;
};

struct JobConfig {
  ProcessKind kind = ProcessKind::RamanUpperIntermediate;
  std::optional<LevelScheme> scheme;
  std::optional<DriveField> drive;
  std::optional<ProbeField> probe;
  std::optional<ThermalEnsemble> ensemble;
  std::optional<GridSpec> grid;
  std::vector<double> thetas;
  ScanModel scan_model = ScanModel::Doppler;
  std::vector<CertifyCaseSpec> certify_cases;  // empty unless a certify block is given
  std::optional<std::filesystem::path> output_dir;

  // Accessors that raise ConfigError naming the missing block.
  const LevelScheme& require_scheme() const;
  const DriveField& require_drive() const;
  const ProbeField& require_probe() const;
  const ThermalEnsemble& require_ensemble() const;
  const GridSpec& require_grid() const;
};

JobConfig parse_config(std::string_view text);
JobConfig load_config(const std::filesystem::path& path);

// Built-in certification cases, one per closed form, with the tolerances the
// default suite is expected to meet.
std::vector<CertifyCaseSpec> default_certify_suite();

}  // namespace dressline::cli
