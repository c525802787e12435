#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "focus/modes.hpp"
#include "focus/numerics.hpp"

namespace focus::beams {

/// Transverse profile of the beam arriving at the lens.
enum class BeamOrder { Gaussian, LGPlus, LGMinus };

std::string to_string(BeamOrder order);
BeamOrder beam_order_from_string(const std::string& name);

/// Incoming beam and ideal thin lens. All lengths share one unit.
///
/// The incoming beam has its waist in the lens plane z = 0, Rayleigh range
/// `in_rayleigh`, circular polarization eps_plus and unit peak amplitude
/// (Gaussian order). `drive_amplitude` scales the coherent state so that
/// <E+> = alpha F_out.
struct BeamSpec {
  double wavelength = 1.0;
  double focal_length = 100.0;
  double in_rayleigh = 1e4;
  BeamOrder order = BeamOrder::Gaussian;
  cd drive_amplitude{1.0, 0.0};

  double k() const { return 2.0 * kPi / wavelength; }

  /// Throws std::invalid_argument on non-positive lengths; returns warnings
  /// for parameters outside the regime the model is meant for.
  std::vector<std::string> validate() const;
};

/// Beam on the strong-focusing branch (in_rayleigh >= focal_length) whose
/// output Rayleigh parameter z_R equals `z_r`. Requires 0 < z_r <= f/2.
BeamSpec beam_with_rayleigh(double focal_length, double z_r, double wavelength = 1.0,
                            BeamOrder order = BeamOrder::Gaussian);

/// Beam whose dimensionless width parameter equals `w`.
BeamSpec beam_with_width(double focal_length, double w, double wavelength = 1.0);

/// Output-beam parameters fixed by the lens transform.
struct DerivedBeamParams {
  double z_r = 0.0;  // Rayleigh parameter of the output beam
  double z_0 = 0.0;  // paraxial focal plane
  cd xi{};           // z_r - i z_0
  double w = 0.0;    // sqrt(z_r / (pi lambda))
};

DerivedBeamParams derive_params(const BeamSpec& spec);

/// Expansion coefficient of a Gaussian input over the (k_t, m, s) modes.
cd kappa_gaussian(const BeamSpec& spec, const modes::ModeIndex& idx);

/// Expansion coefficient of a first-order Laguerre-Gaussian input.
cd kappa_lg(const BeamSpec& spec, const modes::ModeIndex& idx);

/// Dispatches on spec.order.
cd kappa(const BeamSpec& spec, const modes::ModeIndex& idx);

/// Complex field amplitude at a point plus evaluation metadata.
struct FieldSample {
  CylPoint point;
  cd e_plus{};
  cd e_minus{};
  cd e_z{};
  double error = 0.0;  // quadrature error estimate, largest component
  int evaluations = 0;

  CircularVector vector() const { return {e_minus, e_plus, e_z}; }
  double norm() const;
};

/// Integration variable for the mode-sum integral.
enum class SpectralVariable {
  Angle,                  // k_t = k sin(theta), theta in [0, pi/2]
  TransverseWavenumber,   // k_t directly, k_t in [0, k]
};

/// Raised when the mode-sum quadrature for one field component fails.
class FieldEvaluationError : public std::runtime_error {
 public:
  FieldEvaluationError(const std::string& what, std::string component, CylPoint point)
      : std::runtime_error(what), component_(std::move(component)), point_(point) {}
  const std::string& component() const { return component_; }
  const CylPoint& point() const { return point_; }

 private:
  std::string component_;
  CylPoint point_;
};

/// Exact focused field F_out = sum_mu kappa_mu F_mu, all three components.
FieldSample field_exact(const BeamSpec& spec, const CylPoint& p,
                        const numerics::QuadratureSpec& quad = {},
                        SpectralVariable variable = SpectralVariable::Angle);

/// Paraxial Gaussian beam with the same z_R and z_0 (eps_plus only).
FieldSample field_paraxial(const BeamSpec& spec, const CylPoint& p);

/// Split of the exact eps_plus component into the paraxial part and its
/// corrections: F_plus = exp(ikz) xi/2 (f1 + f2 - f3).
struct ParaxialCorrections {
  cd f1{};
  cd f2{};
  cd f3{};
};

ParaxialCorrections paraxial_decomposition(const BeamSpec& spec, const CylPoint& p,
                                           const numerics::QuadratureSpec& quad = {});

/// Power-like integral of |F_in|^2 over the lens plane, scaled by |alpha|^2.
double incoming_power(const BeamSpec& spec);

}  // namespace focus::beams
