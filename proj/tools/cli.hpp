#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "focus/beams.hpp"
#include "focus/scatter.hpp"

namespace focus::cli {

enum class Command { Profile, FocalPlane, Angular, G2Width, KRatio, RsSweep };
enum class FieldModel { Exact, Paraxial };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
std::string to_string(FieldModel m);

/// Fully resolved run configuration. Lengths are in wavelengths.
///
/// Empty vectors and unset optionals pick the per-command defaults in
/// `resolve_defaults`.
struct RunConfig {
  Command command = Command::Profile;

  std::vector<double> focal_lengths;
  std::vector<double> in_rayleigh;   // z_in values
  std::vector<double> out_rayleigh;  // z_R values, alternative to z_in
  beams::BeamOrder order = beams::BeamOrder::Gaussian;
  FieldModel model = FieldModel::Exact;

  double gamma_over_omega = 7.389e-9;
  double detuning = 0.0;  // Delta / Gamma
  double drive = 1e-3;    // |C| / Gamma
  scatter::PositionPolicy position = scatter::PositionPolicy::OnAxisMax;
  double atom_z = 0.0;    // used when position is Explicit

  int points = 400;
  double z_min = -20.0;  // profile window, relative to z_0
  double z_max = 10.0;
  double rho_max = 3.0;
  double phi_min = 0.0;  // in units of pi
  double phi_max = 1.0;
  std::optional<double> w_min;
  std::optional<double> w_max;
  double radius = 50.0;

  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 20000;
  unsigned threads = 0;

  std::string output;  // empty or "-" writes the table to stdout
  OutputFormat format = OutputFormat::Csv;
  bool plot_script = false;
};

/// Invalid configuration; `field` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses flags (and an optional --config file, which flags override).
/// Throws ConfigError; returns nullopt after printing --help.
std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out);

/// Fills per-command defaults and checks ranges. Throws ConfigError.
RunConfig resolve_defaults(RunConfig config);

/// Builds the field provider for one beam.
using FieldFactory = std::function<scatter::FieldProvider(const beams::BeamSpec&)>;
FieldFactory default_field_factory(const RunConfig& config);

/// Result of a run: one row per grid point plus metadata. NaN marks a
/// missing value (g2 where the intensity vanishes).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata;
  std::vector<std::string> warnings;
};

Table run(const RunConfig& config, const FieldFactory& factory);
Table run(const RunConfig& config);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
std::string plot_script(const Table& table, const RunConfig& config, const std::string& data_path);

/// Whole program: parse, run, write. Returns the process exit status
/// (0 ok, 1 configuration error, 2 numerical failure).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace focus::cli
