#include "focus/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focus::numerics {

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

namespace {

constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 30.0;

// Power series sum_m (-1)^m (x/2)^(2m+n) / (m! (m+n)!).
double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  const double q = half * half;
  for (int m = 1; m < 60; ++m) {
    term *= -q / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel asymptotic expansion, accurate to ~1e-16 for x >= 30 and n <= 3.
double asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  const double inv8x = 1.0 / (8.0 * x);
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) * inv8x / k;
    if (k % 2 == 1) {
      q += (k % 4 == 1 ? 1.0 : -1.0) * term;
    } else {
      p += (k % 4 == 2 ? -1.0 : 1.0) * term;
    }
    if (std::abs(term) < 1e-18) break;
  }
  // chi = x - n pi/2 - pi/4, expanded so that x itself is never shifted.
  const double shift = n * kPi / 2.0 + kPi / 4.0;
  const double c = std::cos(x) * std::cos(shift) + std::sin(x) * std::sin(shift);
  const double s = std::sin(x) * std::cos(shift) - std::cos(x) * std::sin(shift);
  return std::sqrt(2.0 / (kPi * x)) * (p * c - q * s);
}

// Miller backward recurrence normalised by J0 + 2 sum J_2k = 1.
std::array<double, 4> miller(double x) {
  int start = static_cast<int>(x + 25.0 + 4.0 * std::sqrt(x));
  start += start % 2;
  double next = 0.0;
  double current = 1e-30;
  double norm = 0.0;
  std::array<double, 4> low{};
  for (int n = start; n >= 1; --n) {
    const double previous = (2.0 * n / x) * current - next;
    next = current;
    current = previous;
    // `current` now holds J_{n-1}.
    const int order = n - 1;
    if (order <= 3) low[order] = current;
    if (order > 0 && order % 2 == 0) norm += 2.0 * current;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      for (auto& v : low) v *= 1e-250;
    }
  }
  norm += low[0];
  for (auto& v : low) v /= norm;
  return low;
}

}  // namespace

std::array<double, 4> bessel_j0123(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("bessel_j: argument must be finite and non-negative");
  }
  if (x == 0.0) return {1.0, 0.0, 0.0, 0.0};
  if (x < kSeriesLimit) return {series(0, x), series(1, x), series(2, x), series(3, x)};
  if (x < kAsymptoticLimit) return miller(x);
  return {asymptotic(0, x), asymptotic(1, x), asymptotic(2, x), asymptotic(3, x)};
}

double bessel_j(int order, double x) {
  if (order < -3 || order > 3) {
    throw std::domain_error("bessel_j: order must satisfy |order| <= 3");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("bessel_j: argument must be finite and non-negative");
  }
  const int n = std::abs(order);
  const double sign = (order < 0 && n % 2 == 1) ? -1.0 : 1.0;
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < kSeriesLimit) return sign * series(n, x);
  if (x < kAsymptoticLimit) return sign * miller(x)[n];
  return sign * asymptotic(n, x);
}

QuadratureResult<cd> integrate_complex(const std::function<cd(double)>& f, double a, double b,
                                       const QuadratureSpec& spec, int initial_pieces) {
  return integrate<cd>(f, a, b, spec, initial_pieces);
}

}  // namespace focus::numerics
