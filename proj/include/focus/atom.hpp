#pragma once

#include <Eigen/Dense>

#include "focus/beams.hpp"

namespace focus::atom {

/// J=0 -> J=1 atom on the z axis.
///
/// Units: hbar = eps0 = c = 1 with lengths in the same unit as the beam, so
/// the transition angular frequency is 2 pi / wavelength. `gamma` and
/// `detuning` (laser minus atom) are angular rates in these units; the dipole
/// moment follows from gamma.
struct AtomSpec {
  double wavelength = 1.0;
  double gamma = 2.0 * kPi * 7.389e-9;  // Cs D2 line, Gamma / omega ~ 7.4e-9
  double detuning = 0.0;
  double z = 0.0;

  double omega() const { return 2.0 * kPi / wavelength; }
  /// Reduced dipole matrix element d with gamma = d^2 omega^3 / (3 pi).
  double dipole_moment() const;
  void validate() const;
};

/// Spherical unit vector u_q for q in {-1, 0, +1}: u_-1 = eps_-, u_0 = z, u_1 = -eps_+.
Eigen::Vector3cd spherical_unit(int q);

/// Map q in {-1, 0, +1} to a storage index 0..2.
inline int slot(int q) { return q + 1; }

/// Far-field radiation amplitude psi_q(r) of the dipole d u_q (Cartesian).
/// The retardation phase is not included.
Eigen::Vector3cd dipole_field(const AtomSpec& atom, int q, const Eigen::Vector3d& r);

/// C_q = alpha d u_q^* . F_out(r_0), indexed by slot(q).
struct DriveCoefficients {
  Eigen::Vector3cd c = Eigen::Vector3cd::Zero();
  double magnitude() const { return c.norm(); }
};

DriveCoefficients drive_coefficients(const AtomSpec& atom, const CircularVector& field, cd alpha);

/// Steady state in the frame rotating at the laser frequency.
/// sigma_ee(i, j) = <e_i| rho |e_j>, sigma_eg(i) = <e_i| rho |g>; indices are slot(q).
struct SteadyState {
  double sigma_gg = 1.0;
  Eigen::Matrix3cd sigma_ee = Eigen::Matrix3cd::Zero();
  Eigen::Vector3cd sigma_eg = Eigen::Vector3cd::Zero();
};

SteadyState steady_state(const DriveCoefficients& drive, double gamma, double detuning);

}  // namespace focus::atom
