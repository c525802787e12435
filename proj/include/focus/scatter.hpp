#pragma once

#include <functional>
#include <optional>

#include "focus/atom.hpp"
#include "focus/beams.hpp"

namespace focus::scatter {

/// Beam field F_out (unit incoming amplitude) at a cylindrical point.
using FieldProvider = std::function<beams::FieldSample(const CylPoint&)>;

FieldProvider exact_field(const beams::BeamSpec& spec, const numerics::QuadratureSpec& quad = {});
FieldProvider paraxial_field(const beams::BeamSpec& spec);

/// Observation point at distance R from the atom, polar angle phi from +z,
/// in the x-z plane.
struct FarFieldPoint {
  double R = 50.0;
  double phi = 0.0;
};

struct IntensityBreakdown {
  double laser = 0.0;
  double dipole = 0.0;
  double interference = 0.0;
  double total = 0.0;
};

struct Observation {
  IntensityBreakdown intensity;
  std::optional<double> g2;  // empty when the total intensity vanishes
};

/// Where the atom sits on the z axis.
enum class PositionPolicy { OnAxisMax, FocalPlane, Explicit };

struct AtomPlacement {
  PositionPolicy policy = PositionPolicy::OnAxisMax;
  double z = 0.0;  // used by Explicit
};

/// On-axis position of the atom for a given beam. OnAxisMax scans
/// [z_0 - 20, z_0 + 5] wavelengths (clipped to z > 0) and refines the best
/// grid point by golden-section search to 1e-3 wavelengths.
double atom_position(const FieldProvider& field, const beams::BeamSpec& spec, AtomPlacement placement);

/// Atom in a coherent beam; computes the steady state once and evaluates
/// far-field observables on demand.
class Scatterer {
 public:
  Scatterer(FieldProvider field, atom::AtomSpec atom, cd alpha, double k, bool atom_present = true);

  /// Coherent amplitude chosen so that |C| / Gamma = drive_over_gamma.
  static Scatterer weakly_driven(FieldProvider field, atom::AtomSpec atom, double k,
                                 double drive_over_gamma = 1e-3);

  Observation observe(const FarFieldPoint& p) const;
  IntensityBreakdown intensity(const FarFieldPoint& p) const { return observe(p).intensity; }
  std::optional<double> g2_zero_delay(const FarFieldPoint& p) const { return observe(p).g2; }

  /// Laser-to-dipole intensity ratio in the forward direction at distance R.
  double k_ratio(double R = 50.0) const;

  cd alpha() const { return alpha_; }
  const atom::DriveCoefficients& drive() const { return drive_; }
  const atom::SteadyState& state() const { return state_; }
  const atom::AtomSpec& atom() const { return atom_; }

 private:
  FieldProvider field_;
  atom::AtomSpec atom_;
  cd alpha_;
  double k_;
  atom::DriveCoefficients drive_;
  atom::SteadyState state_;
};

/// Intensities below this (internal units) leave g2 undefined.
inline constexpr double kMinimumIntensity = 1e-30;

/// Resonant absorption cross section 3 lambda^2 / (2 pi).
double absorption_cross_section(double wavelength);

/// Fraction of the incoming energy an atom at z_atom scatters.
double scattering_ratio(const FieldProvider& field, const beams::BeamSpec& spec, double z_atom);

}  // namespace focus::scatter
