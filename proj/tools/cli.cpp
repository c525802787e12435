#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>

#include "focus/parallel.hpp"

namespace focus::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::Profile, "profile", "on-axis |F+| against (z - z_0) for one or more beams"},
    {Command::FocalPlane, "focal-plane", "|F+| against rho in the plane of the atom"},
    {Command::Angular, "angular", "far-field intensities and g2(0) against observation angle"},
    {Command::G2Width, "g2-width", "forward g2(0) and K against the width parameter w"},
    {Command::KRatio, "k-ratio", "forward laser/dipole ratio K against w"},
    {Command::RsSweep, "rs-sweep", "scattering ratio R_s against w for several focal lengths"},
};

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

std::vector<double> logspace(double a, double b, int n) {
  auto e = linspace(std::log(a), std::log(b), n);
  for (auto& v : e) v = std::exp(v);
  if (n > 1) {
    e.front() = a;
    e.back() = b;
  }
  return e;
}

// Largest w on the strong-focusing branch (z_R = f/2).
double width_cap(double f) { return std::sqrt(0.5 * f / kPi) * (1.0 - 1e-12); }

bool is_sweep_over_width(Command c) {
  return c == Command::G2Width || c == Command::KRatio || c == Command::RsSweep;
}

bool needs_atom(Command c) { return c != Command::Profile && c != Command::FocalPlane; }

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void require_positive(const std::vector<double>& values, const char* field) {
  for (double v : values) require(v > 0.0 && std::isfinite(v), field, "values must be positive, got " + format_number(v));
}

struct Beam {
  std::string label;
  beams::BeamSpec spec;
};

std::vector<Beam> fixed_beams(const RunConfig& c) {
  const double f = c.focal_lengths.front();
  std::vector<Beam> out;
  for (double z_in : c.in_rayleigh) {
    beams::BeamSpec spec;
    spec.focal_length = f;
    spec.in_rayleigh = z_in;
    spec.order = c.order;
    out.push_back({"z_in=" + format_number(z_in), spec});
  }
  for (double z_r : c.out_rayleigh) {
    out.push_back({"z_R=" + format_number(z_r), beams::beam_with_rayleigh(f, z_r, 1.0, c.order)});
  }
  return out;
}

nlohmann::json derived_record(const beams::BeamSpec& spec) {
  const auto d = beams::derive_params(spec);
  return {{"f", spec.focal_length}, {"z_in", spec.in_rayleigh}, {"z_R", d.z_r}, {"z_0", d.z_0}, {"w", d.w}};
}

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = to_string(c.command);
  j["wavelength"] = 1.0;
  j["f"] = c.focal_lengths;
  j["z_in"] = c.in_rayleigh;
  j["z_R"] = c.out_rayleigh;
  j["order"] = beams::to_string(c.order);
  j["beam"] = to_string(c.model);
  if (needs_atom(c.command)) {
    j["gamma_over_omega"] = c.gamma_over_omega;
    j["detuning_over_gamma"] = c.detuning;
    j["drive_over_gamma"] = c.drive;
  }
  switch (c.position) {
    case scatter::PositionPolicy::OnAxisMax: j["atom_position"] = "max"; break;
    case scatter::PositionPolicy::FocalPlane: j["atom_position"] = "focal"; break;
    case scatter::PositionPolicy::Explicit: j["atom_position"] = c.atom_z; break;
  }
  j["points"] = c.points;
  switch (c.command) {
    case Command::Profile: j["z_min"] = c.z_min; j["z_max"] = c.z_max; break;
    case Command::FocalPlane: j["rho_max"] = c.rho_max; break;
    case Command::Angular:
      j["phi_min"] = c.phi_min;
      j["phi_max"] = c.phi_max;
      j["radius"] = c.radius;
      break;
    default:
      j["w_min"] = *c.w_min;
      if (c.w_max) j["w_max"] = *c.w_max;
      if (c.command != Command::RsSweep) j["radius"] = c.radius;
      break;
  }
  j["relative_tolerance"] = c.relative_tolerance;
  j["absolute_tolerance"] = c.absolute_tolerance;
  j["max_subdivisions"] = c.max_subdivisions;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

class WarningLog {
 public:
  void add(const std::string& w) {
    if (std::find(items_.begin(), items_.end(), w) == items_.end()) items_.push_back(w);
  }
  void add_all(const std::vector<std::string>& ws) {
    for (const auto& w : ws) add(w);
  }
  std::vector<std::string> take() { return std::move(items_); }

 private:
  std::vector<std::string> items_;
};

atom::AtomSpec atom_for(const RunConfig& c, double z) {
  atom::AtomSpec a;
  a.gamma = c.gamma_over_omega * a.omega();
  a.detuning = c.detuning * a.gamma;
  a.z = z;
  return a;
}

scatter::AtomPlacement placement_for(const RunConfig& c) { return {c.position, c.atom_z}; }

Table run_profile(const RunConfig& c, const FieldFactory& factory, WarningLog& log) {
  Table t;
  t.columns = {"Z[lambda]"};
  const auto grid = linspace(c.z_min, c.z_max, c.points);
  std::vector<std::vector<double>> columns;
  for (const auto& beam : fixed_beams(c)) {
    log.add_all(beam.spec.validate());
    const auto field = factory(beam.spec);
    const double z_0 = beams::derive_params(beam.spec).z_0;
    t.columns.push_back("|F+|(" + beam.label + ")[1]");
    columns.push_back(parallel_map(
        grid, [&](double Z) { return std::abs(field({0.0, 0.0, z_0 + Z}).e_plus); }, c.threads));
    t.metadata["derived"].push_back(derived_record(beam.spec));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& col : columns) row.push_back(col[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_focal_plane(const RunConfig& c, const FieldFactory& factory, WarningLog& log) {
  Table t;
  t.columns = {"rho[lambda]"};
  const auto grid = linspace(0.0, c.rho_max, c.points);
  std::vector<std::vector<double>> columns;
  for (const auto& beam : fixed_beams(c)) {
    log.add_all(beam.spec.validate());
    const auto field = factory(beam.spec);
    const double plane = scatter::atom_position(field, beam.spec, placement_for(c));
    t.columns.push_back("|F+|(" + beam.label + ")[1]");
    columns.push_back(parallel_map(
        grid, [&](double rho) { return std::abs(field({rho, 0.0, plane}).e_plus); }, c.threads));
    auto record = derived_record(beam.spec);
    record["plane_z"] = plane;
    t.metadata["derived"].push_back(record);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& col : columns) row.push_back(col[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_angular(const RunConfig& c, const FieldFactory& factory, WarningLog& log) {
  const auto beam = fixed_beams(c).front();
  log.add_all(beam.spec.validate());
  const auto field = factory(beam.spec);
  const double z = scatter::atom_position(field, beam.spec, placement_for(c));
  const auto scatterer = scatter::Scatterer::weakly_driven(field, atom_for(c, z), beam.spec.k(), c.drive);

  Table t;
  t.columns = {"phi[pi]", "I_L[internal]", "I_d[internal]", "I_int[internal]", "I_total[internal]", "g2[1]"};
  const auto grid = linspace(c.phi_min, c.phi_max, c.points);
  const auto obs = parallel_map(
      grid, [&](double p) { return scatterer.observe({c.radius, p * kPi}); }, c.threads);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& I = obs[i].intensity;
    t.rows.push_back({grid[i], I.laser, I.dipole, I.interference, I.total, obs[i].g2.value_or(kNaN)});
  }
  auto record = derived_record(beam.spec);
  record["atom_z"] = z;
  t.metadata["derived"].push_back(record);
  return t;
}

struct ForwardPoint {
  double z_atom;
  double g2;
  double k_ratio;
};

Table run_width_sweep(const RunConfig& c, const FieldFactory& factory, WarningLog& log) {
  const double f = c.focal_lengths.front();
  const double hi = std::min(c.w_max.value_or(width_cap(f)), width_cap(f));
  require(*c.w_min < hi, "w-min", "must be below the largest width " + format_number(hi) + " for f = " + format_number(f));
  const auto grid = logspace(*c.w_min, hi, c.points);

  std::vector<beams::BeamSpec> specs;
  for (double w : grid) {
    specs.push_back(beams::beam_with_width(f, w));
    log.add_all(specs.back().validate());
  }
  const auto results = parallel_map(
      specs,
      [&](const beams::BeamSpec& spec) {
        const auto field = factory(spec);
        const double z = scatter::atom_position(field, spec, placement_for(c));
        const auto s = scatter::Scatterer::weakly_driven(field, atom_for(c, z), spec.k(), c.drive);
        const auto o = s.observe({c.radius, 0.0});
        return ForwardPoint{z, o.g2.value_or(kNaN), o.intensity.laser / o.intensity.dipole};
      },
      c.threads);

  Table t;
  const bool with_g2 = c.command == Command::G2Width;
  t.columns = {"w[1]", "z_R[lambda]", "z_in[lambda]"};
  if (with_g2) t.columns.push_back("g2[1]");
  t.columns.push_back("K[1]");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto d = beams::derive_params(specs[i]);
    std::vector<double> row{grid[i], d.z_r, specs[i].in_rayleigh};
    if (with_g2) row.push_back(results[i].g2);
    row.push_back(results[i].k_ratio);
    t.rows.push_back(std::move(row));
    auto record = derived_record(specs[i]);
    record["atom_z"] = results[i].z_atom;
    t.metadata["derived"].push_back(record);
  }
  return t;
}

Table run_rs_sweep(const RunConfig& c, const FieldFactory& factory, WarningLog& log) {
  std::vector<beams::BeamSpec> specs;
  std::vector<double> widths;
  for (double f : c.focal_lengths) {
    const double hi = std::min(c.w_max.value_or(width_cap(f)), width_cap(f));
    if (!(*c.w_min < hi)) {
      log.add("f = " + format_number(f) + ": no widths in range (largest w is " + format_number(hi) + ")");
      continue;
    }
    for (double w : logspace(*c.w_min, hi, c.points)) {
      specs.push_back(beams::beam_with_width(f, w));
      widths.push_back(w);
      log.add_all(specs.back().validate());
    }
  }
  struct RsPoint {
    double z_atom;
    double rs;
  };
  const auto results = parallel_map(
      specs,
      [&](const beams::BeamSpec& spec) {
        const auto field = factory(spec);
        const double z = scatter::atom_position(field, spec, placement_for(c));
        return RsPoint{z, scatter::scattering_ratio(field, spec, z)};
      },
      c.threads);

  Table t;
  t.columns = {"f[lambda]", "w[1]", "z_in[lambda]", "R_s[1]"};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    t.rows.push_back({specs[i].focal_length, widths[i], specs[i].in_rayleigh, results[i].rs});
    auto record = derived_record(specs[i]);
    record["atom_z"] = results[i].z_atom;
    t.metadata["derived"].push_back(record);
  }
  return t;
}

std::string describe(const CylPoint& p) {
  return "rho=" + format_number(p.rho) + ", phi=" + format_number(p.phi) + ", z=" + format_number(p.z);
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& info : kCommands) {
    if (info.command == c) return info.name;
  }
  return "?";
}

std::string to_string(FieldModel m) { return m == FieldModel::Exact ? "exact" : "paraxial"; }

std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Strongly focused light driving a single two-level atom. Lengths are in wavelengths."};
  app.name("focus");
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  for (const auto& info : kCommands) app.add_subcommand(info.name, info.help);

  RunConfig c;
  std::string beam = "exact";
  std::string order = "gaussian";
  std::string position = "max";
  std::string format = "csv";
  std::optional<double> atom_z;
  std::optional<double> w_min;
  std::optional<double> w_max;

  auto* z_in = app.add_option("--z-in", c.in_rayleigh, "incoming Rayleigh range(s)")->delimiter(',');
  auto* z_r = app.add_option("--z-r", c.out_rayleigh, "focused Rayleigh parameter(s), instead of --z-in")->delimiter(',');
  z_in->excludes(z_r);
  app.add_option("--f", c.focal_lengths, "focal length(s)")->delimiter(',');
  app.add_option("--beam", beam, "field model")->check(CLI::IsMember({"exact", "paraxial"}));
  app.add_option("--order", order, "input beam profile")->check(CLI::IsMember({"gaussian", "lg-plus", "lg-minus"}));
  app.add_option("--gamma-over-omega", c.gamma_over_omega, "linewidth over transition frequency (Cs D2 default)");
  app.add_option("--detuning", c.detuning, "laser detuning over linewidth");
  app.add_option("--drive", c.drive, "Rabi coupling |C| over linewidth");
  app.add_option("--atom-position", position, "atom on axis: intensity maximum or paraxial focus")
      ->check(CLI::IsMember({"max", "focal"}));
  app.add_option("--atom-z", atom_z, "explicit atom position z (overrides --atom-position)");
  app.add_option("--points", c.points, "grid points per curve");
  app.add_option("--z-min", c.z_min, "profile window start, relative to z_0");
  app.add_option("--z-max", c.z_max, "profile window end, relative to z_0");
  app.add_option("--rho-max", c.rho_max, "focal-plane radius");
  app.add_option("--phi-min", c.phi_min, "first observation angle, units of pi");
  app.add_option("--phi-max", c.phi_max, "last observation angle, units of pi");
  app.add_option("--w-min", w_min, "smallest width parameter");
  app.add_option("--w-max", w_max, "largest width parameter");
  app.add_option("--radius", c.radius, "observation distance from the atom");
  app.add_option("--rel-tol", c.relative_tolerance, "quadrature relative tolerance");
  app.add_option("--abs-tol", c.absolute_tolerance, "quadrature absolute tolerance");
  app.add_option("--max-subdivisions", c.max_subdivisions, "quadrature subdivision budget per field value");
  app.add_option("--threads", c.threads, "worker threads (0: hardware concurrency)");
  app.add_option("-o,--output", c.output, "output file ('-' or empty: stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-script", c.plot_script, "also write a gnuplot script next to the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError("arguments", e.what());
  }

  for (const auto& info : kCommands) {
    if (app.got_subcommand(info.name)) c.command = info.command;
  }
  c.model = beam == "exact" ? FieldModel::Exact : FieldModel::Paraxial;
  c.order = beams::beam_order_from_string(order);
  c.position = position == "max" ? scatter::PositionPolicy::OnAxisMax : scatter::PositionPolicy::FocalPlane;
  if (atom_z) {
    c.position = scatter::PositionPolicy::Explicit;
    c.atom_z = *atom_z;
  }
  c.w_min = w_min;
  c.w_max = w_max;
  c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  return c;
}

RunConfig resolve_defaults(RunConfig c) {
  const Command cmd = c.command;
  if (c.focal_lengths.empty()) {
    if (cmd == Command::RsSweep) c.focal_lengths = {2.5, 5, 10, 25, 50, 100, 250, 500, 1000};
    else if (cmd == Command::Profile || cmd == Command::FocalPlane) c.focal_lengths = {100};
    else c.focal_lengths = {500};
  }
  require_positive(c.focal_lengths, "f");
  if (cmd != Command::RsSweep) require(c.focal_lengths.size() == 1, "f", to_string(cmd) + " takes one focal length");

  if (is_sweep_over_width(cmd)) {
    require(c.in_rayleigh.empty() && c.out_rayleigh.empty(), "z-in", to_string(cmd) + " sweeps w; do not pass --z-in or --z-r");
    if (!c.w_min) c.w_min = cmd == Command::G2Width ? 0.03 : (cmd == Command::KRatio ? 0.1 : 0.02);
    if (!c.w_max && cmd != Command::RsSweep) c.w_max = 6.0;
    require(*c.w_min > 0.0, "w-min", "must be positive");
    if (c.w_max) require(*c.w_max > *c.w_min, "w-max", "must exceed w-min");
  } else {
    if (c.in_rayleigh.empty() && c.out_rayleigh.empty()) {
      if (cmd == Command::Angular) c.in_rayleigh = {3e4};
      else c.in_rayleigh = {1e3, 3e3, 1e4, 3e4, 1e5, 3e5};
    }
    require_positive(c.in_rayleigh, "z-in");
    require_positive(c.out_rayleigh, "z-r");
    for (double z : c.out_rayleigh) {
      require(z <= 0.5 * c.focal_lengths.front(), "z-r", "must not exceed f/2");
    }
    if (cmd == Command::Angular) {
      require(c.in_rayleigh.size() + c.out_rayleigh.size() == 1, "z-in", "angular takes one beam");
    }
  }

  if (c.model == FieldModel::Paraxial) {
    require(c.order == beams::BeamOrder::Gaussian, "beam", "the paraxial model covers the Gaussian order only");
  }
  if (needs_atom(cmd)) {
    require(c.order == beams::BeamOrder::Gaussian, "order", to_string(cmd) + " needs a Gaussian beam (the atom sits on axis)");
    require(c.gamma_over_omega > 0.0 && std::isfinite(c.gamma_over_omega), "gamma-over-omega", "must be positive");
    require(std::isfinite(c.detuning), "detuning", "must be finite");
    require(c.drive > 0.0 && std::isfinite(c.drive), "drive", "must be positive");
  }
  if (c.position == scatter::PositionPolicy::Explicit) require(std::isfinite(c.atom_z), "atom-z", "must be finite");
  require(c.points >= 2, "points", "need at least 2 grid points");
  require(c.z_min < c.z_max, "z-max", "must exceed z-min");
  require(c.rho_max > 0.0, "rho-max", "must be positive");
  require(c.phi_min >= 0.0 && c.phi_min < c.phi_max && c.phi_max <= 1.0, "phi-max", "need 0 <= phi-min < phi-max <= 1");
  require(c.radius > 0.0 && std::isfinite(c.radius), "radius", "must be positive");
  require(c.relative_tolerance > 0.0, "rel-tol", "must be positive");
  require(c.absolute_tolerance > 0.0, "abs-tol", "must be positive");
  require(c.max_subdivisions >= 1, "max-subdivisions", "must be at least 1");
  if (c.plot_script) {
    require(!c.output.empty() && c.output != "-", "plot-script", "needs --output");
    require(c.format == OutputFormat::Csv, "plot-script", "needs csv output");
  }
  return c;
}

FieldFactory default_field_factory(const RunConfig& config) {
  numerics::QuadratureSpec quad;
  quad.relative_tolerance = config.relative_tolerance;
  quad.absolute_tolerance = config.absolute_tolerance;
  quad.max_subdivisions = config.max_subdivisions;
  if (config.model == FieldModel::Paraxial) {
    return [](const beams::BeamSpec& spec) { return scatter::paraxial_field(spec); };
  }
  return [quad](const beams::BeamSpec& spec) { return scatter::exact_field(spec, quad); };
}

Table run(const RunConfig& config, const FieldFactory& factory) {
  const RunConfig c = resolve_defaults(config);
  WarningLog log;
  if (needs_atom(c.command) && c.command != Command::RsSweep && c.radius < 10.0) {
    log.add("radius " + format_number(c.radius) + " is below 10 wavelengths; far-field expressions are inaccurate");
  }
  Table t;
  switch (c.command) {
    case Command::Profile: t = run_profile(c, factory, log); break;
    case Command::FocalPlane: t = run_focal_plane(c, factory, log); break;
    case Command::Angular: t = run_angular(c, factory, log); break;
    case Command::G2Width:
    case Command::KRatio: t = run_width_sweep(c, factory, log); break;
    case Command::RsSweep: t = run_rs_sweep(c, factory, log); break;
  }
  t.warnings = log.take();
  t.metadata["config"] = config_json(c);
  t.metadata["columns"] = t.columns;
  t.metadata["warnings"] = t.warnings;
  t.metadata["units"] = "lengths in wavelengths; intensities in internal units (hbar = eps0 = c = 1)";
  return t;
}

Table run(const RunConfig& config) { return run(config, default_field_factory(resolve_defaults(config))); }

void write_csv(const Table& table, std::ostream& out) {
  out << "# focus " << table.metadata["config"]["command"].get<std::string>() << '\n';
  for (const auto& [key, value] : table.metadata["config"].items()) {
    if (key == "command") continue;
    out << "# " << key << " = " << value.dump() << '\n';
  }
  for (const auto& w : table.warnings) out << "# warning: " << w << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::json j;
  j["metadata"] = table.metadata;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::json::array();
    for (double v : row) r.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
    j["rows"].push_back(r);
  }
  out << j.dump(2) << '\n';
}

std::string plot_script(const Table& table, const RunConfig& config, const std::string& data_path) {
  std::ostringstream s;
  s << "# gnuplot script for " << data_path << "\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel '" << table.columns.front() << "'\n";
  switch (config.command) {
    case Command::Angular:
      s << "set logscale y\n"
        << "plot for [i=2:5] '" << data_path << "' using 1:(abs(column(i))) with lines, \\\n"
        << "     '" << data_path << "' using 1:6 axes x1y2 with lines\n";
      break;
    case Command::G2Width:
    case Command::KRatio:
      s << "set logscale x\n"
        << "plot '" << data_path << "' using 1:" << table.columns.size() - (config.command == Command::G2Width ? 1 : 0)
        << " with lines\n";
      break;
    case Command::RsSweep: {
      s << "set xlabel 'w[1]'\nset logscale x\nplot";
      const char* sep = "";
      for (double f : config.focal_lengths) {
        s << sep << " '" << data_path << "' using ($1 == " << format_number(f) << " ? $2 : NaN):4 with lines title 'f = "
          << format_number(f) << "'";
        sep = ", \\\n    ";
      }
      s << '\n';
      break;
    }
    default:
      s << "plot for [i=2:" << table.columns.size() << "] '" << data_path << "' using 1:i with lines\n";
      break;
  }
  return s.str();
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto parsed = parse(argc, argv, out);
    if (!parsed) return 0;
    const RunConfig config = resolve_defaults(*parsed);
    const Table table = run(config);
    for (const auto& w : table.warnings) err << "warning: " << w << '\n';

    const bool to_stdout = config.output.empty() || config.output == "-";
    auto write = [&](std::ostream& os) {
      if (config.format == OutputFormat::Csv) write_csv(table, os);
      else write_json(table, os);
    };
    if (to_stdout) {
      write(out);
      return 0;
    }
    std::ofstream data(config.output, std::ios::binary);
    if (!data) throw ConfigError("output", "cannot open " + config.output);
    write(data);
    std::ofstream meta(config.output + ".meta.json", std::ios::binary);
    meta << table.metadata.dump(2) << '\n';
    if (config.plot_script) {
      std::ofstream gp(config.output + ".gp", std::ios::binary);
      gp << plot_script(table, config, config.output);
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const beams::FieldEvaluationError& e) {
    err << "numerical failure at " << describe(e.point()) << " (" << e.component() << "): " << e.what() << '\n';
    return 2;
  } catch (const numerics::QuadratureError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace focus::cli
