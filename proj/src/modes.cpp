#include "focus/modes.hpp"

#include <cmath>
#include <stdexcept>

namespace focus {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const cd kI{0.0, 1.0};
}  // namespace

Eigen::Vector3cd to_cartesian(const CircularVector& v) {
  return {kInvSqrt2 * (v.plus + v.minus), kI * kInvSqrt2 * (v.plus - v.minus), v.z};
}

CircularVector to_circular(const Eigen::Vector3cd& v) {
  // Projections onto conj(eps_minus) and conj(eps_plus).
  return {kInvSqrt2 * (v.x() + kI * v.y()), kInvSqrt2 * (v.x() - kI * v.y()), v.z()};
}

namespace modes {

double ModeIndex::k_z() const { return std::sqrt(std::max(0.0, k * k - k_t * k_t)); }

void ModeIndex::validate() const {
  if (!(k > 0.0)) throw std::invalid_argument("ModeIndex: k must be positive");
  if (!(k_t >= 0.0 && k_t <= k)) throw std::invalid_argument("ModeIndex: need 0 <= k_t <= k");
  if (s != 1 && s != -1) throw std::invalid_argument("ModeIndex: helicity must be +1 or -1");
}

cd kernel_G(const ModeIndex& idx, int m_eff, const CylPoint& p) {
  const double radial = numerics::bessel_j(m_eff, idx.k_t * p.rho);
  return radial * std::exp(kI * (idx.k_z() * p.z + m_eff * p.phi));
}

CircularVector mode_field(const ModeIndex& idx, const CylPoint& p) {
  idx.validate();
  const double k = idx.k;
  const double kz = idx.k_z();
  const double norm = 1.0 / (4.0 * kPi);
  CircularVector f;
  f.minus = norm * (idx.s * k - kz) / k * kernel_G(idx, idx.m + 1, p);
  f.plus = norm * (idx.s * k + kz) / k * kernel_G(idx, idx.m - 1, p);
  f.z = -kI * std::sqrt(2.0) * norm * (idx.k_t / k) * kernel_G(idx, idx.m, p);
  return f;
}

}  // namespace modes
}  // namespace focus
