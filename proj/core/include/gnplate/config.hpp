#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gnplate/material.hpp"
#include "gnplate/state.hpp"

namespace gnplate {

enum class ExperimentKind {
  type2_conservation,
  type3_decay,
  spatial_decay,
  backward_uniqueness,
  forward_backward_roundtrip,
  mms_convergence,
  resolvent_check,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_name(std::string_view name);

struct GridConfig {
  double Lx = 0.0;
  double Ly = 0.0;
  int nx = 0;
  int ny = 0;
};

struct TimeConfig {
  double dt = 1e-2;
  double t_end = 1.0;
  int snapshot_every = 1;
};

struct ExperimentConfig {
  std::optional<ExperimentKind> kind;
  /// type3_decay: also check the long-time thermal decay, the mode condition
  /// and the log-affine tail of E0.
  bool asymptotic = false;
  /// Thermal energy must fall by at least this factor from its peak.
  double decay_factor = 10.0;
  /// spatial_decay: envelope points with t below this are skipped.
  double t_min = 0.0;
  /// backward_uniqueness: size of the random perturbation.
  double epsilon = 1e-10;
};

struct OutputConfig {
  std::string dir = "out";
  /// Field snapshots every snapshot_every steps, one CSV per field.
  bool write_snapshots = false;
};

struct Config {
  MaterialParams material;
  GridConfig grid;
  TimeConfig time;
  ExperimentConfig experiment;
  InitialCondition ic;
  OutputConfig output;
};

/// Parses the `[section]` / `key = value` format. Blank lines and `#`
/// comments are ignored. Material parameters are validated before returning.
Config parse_config(std::string_view text);

/// Same parsing and range checks without the material admissibility test.
Config parse_config_unvalidated(std::string_view text);

/// Reads a file; ParseError if it cannot be read.
std::string read_config_file(const std::string& path);

Config load_config(const std::string& path);

}  // namespace gnplate
