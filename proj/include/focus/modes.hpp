#pragma once

#include <Eigen/Dense>

#include "focus/numerics.hpp"

namespace focus {

/// Cylindrical coordinates of a field point.
struct CylPoint {
  double rho = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

/// Components of a complex vector along (eps_minus, eps_plus, z_hat), with
/// eps_pm = (x_hat +- i y_hat) / sqrt(2).
struct CircularVector {
  cd minus{};
  cd plus{};
  cd z{};
};

/// Cartesian components of a circular-basis vector.
Eigen::Vector3cd to_cartesian(const CircularVector& v);

/// Circular-basis components of a Cartesian vector (inverse of to_cartesian).
CircularVector to_circular(const Eigen::Vector3cd& v);

namespace modes {

/// Quantum numbers of a forward-propagating transverse eigenmode at fixed k.
struct ModeIndex {
  double k = 2.0 * kPi;
  double k_t = 0.0;
  int m = 0;
  int s = 1;  // helicity, +1 or -1

  /// Longitudinal wavenumber on the forward branch.
  double k_z() const;
  /// Throws std::invalid_argument unless k > 0, 0 <= k_t <= k and s = +-1.
  void validate() const;
};

/// J_m(k_t rho) exp(i k_z z) exp(i m phi).
cd kernel_G(const ModeIndex& idx, int m_eff, const CylPoint& p);

/// Dimensionless mode function F_nu at p in the circular basis.
CircularVector mode_field(const ModeIndex& idx, const CylPoint& p);

}  // namespace modes
}  // namespace focus
