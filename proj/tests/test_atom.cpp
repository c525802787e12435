#include <doctest.h>

#include <cmath>
#include <random>

#include "focus/atom.hpp"
#include "support/bloch.hpp"

using namespace focus;
using atom::AtomSpec;

namespace {

atom::DriveCoefficients drive(cd minus, cd zero, cd plus) {
  atom::DriveCoefficients c;
  c.c << minus, zero, plus;
  return c;
}

}  // namespace

TEST_CASE("dipole moment follows from the decay rate") {
  const AtomSpec a;
  const double w = a.omega();
  CHECK(a.dipole_moment() * a.dipole_moment() * w * w * w / (3.0 * kPi) == doctest::Approx(a.gamma).epsilon(1e-14));
}

TEST_CASE("spherical unit vectors") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK((atom::spherical_unit(-1) - to_cartesian({1.0, 0.0, 0.0})).norm() < 1e-15);
  CHECK((atom::spherical_unit(1) + to_cartesian({0.0, 1.0, 0.0})).norm() < 1e-15);
  CHECK((atom::spherical_unit(0) - Eigen::Vector3cd(0, 0, 1)).norm() == 0.0);
  for (int q = -1; q <= 1; ++q) {
    for (int p = -1; p <= 1; ++p) {
      CHECK(std::abs(atom::spherical_unit(q).dot(atom::spherical_unit(p)) - (p == q ? 1.0 : 0.0)) < 1e-15);
    }
  }
  CHECK(std::abs(atom::spherical_unit(1).x() + s) < 1e-15);
  CHECK_THROWS_AS(atom::spherical_unit(2), std::invalid_argument);
}

TEST_CASE("dipole field is transverse, vanishes along the dipole and falls as 1/r") {
  const AtomSpec a;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d dir = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
    for (int q = -1; q <= 1; ++q) {
      const auto near = atom::dipole_field(a, q, 20.0 * dir);
      const auto far = atom::dipole_field(a, q, 60.0 * dir);
      // Transversality is r . psi with no conjugation.
      CHECK(std::abs(cd(dir.cast<cd>().transpose() * near)) < 1e-15 * (near.norm() + 1e-300));
      CHECK((far * 3.0 - near).norm() < 1e-14 * near.norm() + 1e-300);
    }
  }
  CHECK(atom::dipole_field(a, 0, Eigen::Vector3d(0, 0, 50)).norm() == 0.0);
  CHECK(atom::dipole_field(a, 0, Eigen::Vector3d(0, 0, -50)).norm() == 0.0);
  CHECK(atom::dipole_field(a, 1, Eigen::Vector3d(0, 0, 50)).norm() > 0.0);
  CHECK_THROWS_AS(atom::dipole_field(a, 1, Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("drive coefficients") {
  const AtomSpec a;
  const CircularVector on_axis{0.0, cd(3.0, -1.0), 0.0};
  CHECK(atom::drive_coefficients(a, on_axis, 0.0).magnitude() == 0.0);

  const cd alpha(0.7, 0.2);
  const auto c = atom::drive_coefficients(a, on_axis, alpha);
  CHECK(c.c[atom::slot(-1)] == cd(0.0));
  CHECK(c.c[atom::slot(0)] == cd(0.0));
  CHECK(std::abs(c.c[atom::slot(1)] + alpha * a.dipole_moment() * on_axis.plus) < 1e-15 * std::abs(alpha * on_axis.plus));

  const auto rotated = atom::drive_coefficients(a, on_axis, alpha * std::exp(cd(0.0, 1.3)));
  CHECK(rotated.magnitude() == doctest::Approx(c.magnitude()).epsilon(1e-15));

  const CircularVector general{cd(0.5, 0.1), cd(-0.2, 1.0), cd(0.0, 0.4)};
  const auto g = atom::drive_coefficients(a, general, 1.0);
  const double d = a.dipole_moment();
  CHECK(std::abs(g.c[atom::slot(-1)] - d * general.minus) < 1e-15 * d);
  CHECK(std::abs(g.c[atom::slot(0)] - d * general.z) < 1e-15 * d);
}

TEST_CASE("steady state of an undriven atom") {
  const auto s = atom::steady_state({}, 1.0, 0.3);
  CHECK(s.sigma_gg == 1.0);
  CHECK(s.sigma_ee.norm() == 0.0);
  CHECK(s.sigma_eg.norm() == 0.0);
}

TEST_CASE("single-component resonant drive") {
  const double gamma = 2.0;
  for (double c : {1e-3, 0.1, 0.5, 2.0}) {
    const auto s = atom::steady_state(drive(0, 0, c), gamma, 0.0);
    const double x = 4.0 * c * c / (gamma * gamma);
    CHECK(s.sigma_ee(2, 2).real() == doctest::Approx(x / (1.0 + 2.0 * x)).epsilon(1e-13));
  }
}

TEST_CASE("far-detuned atom stays dark") {
  for (double delta : {-1e6, 1e6}) {
    const auto s = atom::steady_state(drive(0.3, 0.0, 0.5), 1.0, delta);
    CHECK(s.sigma_ee.trace().real() < 1e-10);
  }
}

TEST_CASE("steady state matches integration of the master equation") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double gamma = 1.0;
  for (int n = 0; n < 20; ++n) {
    Eigen::Vector3cd c;
    for (int i = 0; i < 3; ++i) c[i] = cd(u(rng), u(rng));
    c *= std::abs(u(rng)) * gamma / c.norm();  // |C| <= Gamma
    const double delta = 2.0 * u(rng) * gamma;

    atom::DriveCoefficients dc;
    dc.c = c;
    const auto s = atom::steady_state(dc, gamma, delta);
    const auto rho = support::bloch_evolve(c, gamma, delta, 50.0 / gamma, 0.01 / gamma);

    CAPTURE(n);
    CHECK(std::abs(rho(0, 0) - s.sigma_gg) < 1e-6);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(rho(i + 1, 0) - s.sigma_eg[i]) < 1e-6);
      for (int j = 0; j < 3; ++j) CHECK(std::abs(rho(i + 1, j + 1) - s.sigma_ee(i, j)) < 1e-6);
    }
  }
}

TEST_CASE("populations, hermiticity and positivity") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n = 0; n < 50; ++n) {
    const auto s = atom::steady_state(drive(cd(u(rng), u(rng)), cd(u(rng), u(rng)), cd(u(rng), u(rng))), 1.5, u(rng));
    CHECK(s.sigma_gg + s.sigma_ee.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s.sigma_ee.trace().imag()) < 1e-14);
    CHECK((s.sigma_ee - s.sigma_ee.adjoint()).norm() < 1e-14);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(0.5 * (s.sigma_ee + s.sigma_ee.adjoint()));
    CHECK(eig.eigenvalues().minCoeff() > -1e-14);
    CHECK(s.sigma_gg >= 0.0);
    CHECK(s.sigma_gg <= 1.0);
  }
}

TEST_CASE("weak drive scales quadratically") {
  const double gamma = 1.0;
  const Eigen::Vector3cd c = drive(cd(0.3, 0.1), cd(0.0, -0.2), cd(0.9, 0.0)).c.normalized() * 1e-3 * gamma;
  atom::DriveCoefficients one;
  one.c = c;
  atom::DriveCoefficients two;
  two.c = 2.0 * c;
  const auto a = atom::steady_state(one, gamma, 0.4);
  const auto b = atom::steady_state(two, gamma, 0.4);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::abs(a.sigma_ee(i, j)) == 0.0) continue;
      CHECK(std::abs(b.sigma_ee(i, j) / a.sigma_ee(i, j)) == doctest::Approx(4.0).epsilon(0.01));
    }
  }
}

TEST_CASE("atom spec validation") {
  AtomSpec a;
  a.gamma = 0.0;
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  CHECK_THROWS_AS(atom::steady_state({}, -1.0, 0.0), std::invalid_argument);
}
