#pragma once

// Direct quadratures used as references for closed forms.

#include <cmath>

#include "focus/beams.hpp"

namespace support {

// Lens-plane overlap integral for kappa, integrated in rho.
inline focus::cd kappa_by_quadrature(const focus::beams::BeamSpec& s, const focus::modes::ModeIndex& idx) {
  using namespace focus;
  const cd i(0.0, 1.0);
  const double k = s.k();
  const double top = std::sqrt(2.0 * s.in_rayleigh * 45.0 / k);
  const int pieces =
      16 + static_cast<int>(k * top * top / (2.0 * s.focal_length) / (2.0 * kPi) + idx.k_t * top / kPi);
  numerics::QuadratureSpec q;
  q.relative_tolerance = 1e-11;
  q.absolute_tolerance = 1e-300;
  const bool gauss = s.order == beams::BeamOrder::Gaussian;
  const auto r = numerics::integrate_complex(
      [&](double rho) {
        const double radial = gauss ? rho * numerics::bessel_j(0, idx.k_t * rho)
                                    : rho * rho / s.in_rayleigh * numerics::bessel_j(1, idx.k_t * rho);
        return radial *
               std::exp(-i * (k * rho * rho / (2.0 * s.focal_length)) - k * rho * rho / (2.0 * s.in_rayleigh));
      },
      0.0, top, q, pieces);
  return kPi * idx.k_t * (idx.k_z() + idx.s * k) / k * r.value;
}

// Upper limit where x^2 exp(-Re(alpha) x^2) has dropped below 1e-16.
inline double hankel_truncation(focus::cd alpha) {
  double x = 1.0;
  while (x * x * std::exp(-alpha.real() * x * x) > 1e-16) x += 0.01;
  return x;
}

// Quadrature and closed form of the two Gaussian-Hankel identities.
struct HankelCheck {
  focus::cd zeroth, zeroth_exact, first, first_exact;
};

inline HankelCheck hankel_identities(focus::cd alpha, double beta) {
  using namespace focus;
  numerics::QuadratureSpec q;
  q.relative_tolerance = 1e-11;
  q.absolute_tolerance = 1e-18;
  const double top = hankel_truncation(alpha);
  const int pieces = 8 + static_cast<int>(beta * top + std::abs(alpha.imag()) * top * top / 3.0);
  HankelCheck h;
  h.zeroth = numerics::integrate_complex(
                 [&](double x) { return x * numerics::bessel_j(0, beta * x) * std::exp(-alpha * x * x); }, 0.0, top,
                 q, pieces)
                 .value;
  h.first = numerics::integrate_complex(
                [&](double x) { return x * x * numerics::bessel_j(1, beta * x) * std::exp(-alpha * x * x); }, 0.0,
                top, q, pieces)
                .value;
  h.zeroth_exact = std::exp(-beta * beta / (4.0 * alpha)) / (2.0 * alpha);
  h.first_exact = beta / (4.0 * alpha * alpha) * std::exp(-beta * beta / (4.0 * alpha));
  return h;
}

}  // namespace support
