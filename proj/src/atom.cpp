#include "focus/atom.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace focus::atom {

namespace {
const cd kI{0.0, 1.0};
}

double AtomSpec::dipole_moment() const {
  const double w = omega();
  return std::sqrt(3.0 * kPi * gamma / (w * w * w));
}

void AtomSpec::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw std::invalid_argument("atom wavelength must be positive");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("atom gamma must be positive");
  if (!std::isfinite(detuning)) throw std::invalid_argument("atom detuning must be finite");
  if (!std::isfinite(z)) throw std::invalid_argument("atom position must be finite");
}

Eigen::Vector3cd spherical_unit(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (q) {
    case -1: return {s, -kI * s, 0.0};
    case 0: return {0.0, 0.0, 1.0};
    case 1: return {-s, -kI * s, 0.0};
  }
  throw std::invalid_argument("spherical_unit: q must be -1, 0 or +1");
}

Eigen::Vector3cd dipole_field(const AtomSpec& atom, int q, const Eigen::Vector3d& r) {
  const double dist = r.norm();
  if (!(dist > 0.0)) throw std::invalid_argument("dipole_field: r must be nonzero");
  const double w = atom.omega();
  const Eigen::Vector3cd d = atom.dipole_moment() * spherical_unit(q);
  const Eigen::Vector3cd n = r.cast<cd>() / dist;
  // (d . n) without conjugation.
  const cd dn = d.transpose() * n;
  return (w * w / (4.0 * kPi)) * (d - dn * n) / dist;
}

DriveCoefficients drive_coefficients(const AtomSpec& atom, const CircularVector& field, cd alpha) {
  const Eigen::Vector3cd f = to_cartesian(field);
  const double d = atom.dipole_moment();
  DriveCoefficients out;
  for (int q = -1; q <= 1; ++q) {
    out.c[slot(q)] = alpha * d * spherical_unit(q).dot(f);  // dot() conjugates the left operand
  }
  return out;
}

SteadyState steady_state(const DriveCoefficients& drive, double gamma, double detuning) {
  if (!(gamma > 0.0)) throw std::invalid_argument("steady_state: gamma must be positive");
  const Eigen::Vector3cd& c = drive.c;
  const Eigen::Matrix3cd outer = c * c.adjoint() / gamma;  // C_i C_j^* / Gamma
  const Eigen::Matrix3cd m1 = outer / cd(gamma / 2.0, detuning);
  const Eigen::Matrix3cd m2 = outer / cd(gamma / 2.0, -detuning);
  const Eigen::Matrix3cd sum = m1 + m2;
  const Eigen::Matrix3cd shifted = sum + Eigen::Matrix3cd::Identity();
  // sum is Hermitian positive semidefinite, so shifted has eigenvalues >= 1.
  Eigen::PartialPivLU<Eigen::Matrix3cd> lu(shifted);
  assert(std::abs(lu.determinant()) >= 1.0 - 1e-9);
  const Eigen::Matrix3cd m = sum * lu.inverse();

  SteadyState s;
  s.sigma_gg = 1.0 / (1.0 + m.trace().real());
  s.sigma_ee = s.sigma_gg * m;
  s.sigma_eg = (kI * s.sigma_gg * c - kI * (s.sigma_ee * c)) / cd(gamma / 2.0, -detuning);
  return s;
}

}  // namespace focus::atom
