#include "focus/scatter.hpp"

#include <cmath>
#include <stdexcept>

namespace focus::scatter {

namespace {

const cd kI{0.0, 1.0};

CylPoint on_axis(double z) { return {0.0, 0.0, z}; }

}  // namespace

FieldProvider exact_field(const beams::BeamSpec& spec, const numerics::QuadratureSpec& quad) {
  return [spec, quad](const CylPoint& p) { return beams::field_exact(spec, p, quad); };
}

FieldProvider paraxial_field(const beams::BeamSpec& spec) {
  return [spec](const CylPoint& p) { return beams::field_paraxial(spec, p); };
}

double atom_position(const FieldProvider& field, const beams::BeamSpec& spec, AtomPlacement placement) {
  const auto params = beams::derive_params(spec);
  switch (placement.policy) {
    case PositionPolicy::Explicit: return placement.z;
    case PositionPolicy::FocalPlane: return params.z_0;
    case PositionPolicy::OnAxisMax: break;
  }

  const double lambda = spec.wavelength;
  const double lo = std::max(params.z_0 - 20.0 * lambda, 1e-3 * lambda);
  const double hi = params.z_0 + 5.0 * lambda;
  auto strength = [&](double z) { return std::abs(field(on_axis(z)).e_plus); };

  const double step = 0.25 * lambda;
  const int n = static_cast<int>(std::ceil((hi - lo) / step));
  double best_z = lo;
  double best = -1.0;
  for (int i = 0; i <= n; ++i) {
    const double z = std::min(hi, lo + i * step);
    const double v = strength(z);
    if (v > best) {
      best = v;
      best_z = z;
    }
  }

  // Golden-section refinement inside the neighbouring grid cells.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(lo, best_z - step);
  double b = std::min(hi, best_z + step);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = strength(x1);
  double f2 = strength(x2);
  while (b - a > 1e-3 * lambda) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = strength(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = strength(x1);
    }
  }
  const double z = 0.5 * (a + b);
  return strength(z) >= best ? z : best_z;
}

Scatterer::Scatterer(FieldProvider field, atom::AtomSpec atom, cd alpha, double k, bool atom_present)
    : field_(std::move(field)), atom_(atom), alpha_(alpha), k_(k) {
  atom_.validate();
  if (atom_present) {
    const auto at_atom = field_(on_axis(atom_.z));
    drive_ = atom::drive_coefficients(atom_, at_atom.vector(), alpha_);
  }
  state_ = atom::steady_state(drive_, atom_.gamma, atom_.detuning);
}

Scatterer Scatterer::weakly_driven(FieldProvider field, atom::AtomSpec atom, double k,
                                   double drive_over_gamma) {
  const double local = field(on_axis(atom.z)).norm();
  if (!(local > 0.0)) throw std::invalid_argument("weakly_driven: beam field vanishes at the atom");
  const cd alpha = drive_over_gamma * atom.gamma / (atom.dipole_moment() * local);
  return Scatterer(std::move(field), atom, alpha, k, true);
}

Observation Scatterer::observe(const FarFieldPoint& p) const {
  if (!(p.R > 0.0)) throw std::invalid_argument("observe: R must be positive");
  const double x = p.R * std::sin(p.phi);
  const CylPoint cyl{std::abs(x), x < 0.0 ? kPi : 0.0, atom_.z + p.R * std::cos(p.phi)};
  const Eigen::Vector3d rel(x, 0.0, p.R * std::cos(p.phi));

  const Eigen::Vector3cd laser = alpha_ * to_cartesian(field_(cyl).vector());
  const cd retard = std::exp(kI * (k_ * p.R));

  std::array<Eigen::Vector3cd, 3> psi;
  Eigen::Vector3cd overlap;  // L^* . psi_i
  for (int q = -1; q <= 1; ++q) {
    psi[atom::slot(q)] = atom::dipole_field(atom_, q, rel);
    overlap[atom::slot(q)] = laser.dot(psi[atom::slot(q)]);
  }
  const Eigen::Vector3cd source = state_.sigma_eg * retard;
  const Eigen::Matrix3cd& rho = state_.sigma_ee;

  double dipole = 0.0;
  cd coherent = 0.0;
  double cross = 0.0;
  for (int i = 0; i < 3; ++i) {
    coherent += overlap[i] * source[i];
    for (int j = 0; j < 3; ++j) {
      dipole += (psi[j].dot(psi[i]) * rho(i, j)).real();
      cross += (std::conj(overlap[j]) * overlap[i] * rho(i, j)).real();
    }
  }

  Observation out;
  auto& I = out.intensity;
  I.laser = laser.squaredNorm();
  I.dipole = dipole;
  I.interference = 2.0 * coherent.real();
  I.total = I.laser + I.dipole + I.interference;

  const double g2_numerator =
      I.laser * I.laser + 2.0 * I.laser * I.dipole + 4.0 * I.laser * coherent.real() + 2.0 * cross;
  if (I.total >= kMinimumIntensity) out.g2 = g2_numerator / (I.total * I.total);
  return out;
}

double Scatterer::k_ratio(double R) const {
  const auto I = intensity({R, 0.0});
  return I.laser / I.dipole;
}

double absorption_cross_section(double wavelength) { return 3.0 * wavelength * wavelength / (2.0 * kPi); }

double scattering_ratio(const FieldProvider& field, const beams::BeamSpec& spec, double z_atom) {
  const auto local = field(on_axis(z_atom));
  const double numerator =
      absorption_cross_section(spec.wavelength) * std::norm(spec.drive_amplitude) * std::pow(local.norm(), 2);
  return numerator / beams::incoming_power(spec);
}

}  // namespace focus::scatter
