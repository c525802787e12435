#include "focus/beams.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace focus::beams {

namespace {

const cd kI{0.0, 1.0};

// Gaussian envelope exp(-k_t^2 z_R / 2k) drops below e^-45 beyond this k_t.
constexpr double kEnvelopeExponent = 45.0;

double envelope_cutoff(double k, double z_r) { return std::sqrt(2.0 * k * kEnvelopeExponent / z_r); }

int angular_index(BeamOrder order) {
  switch (order) {
    case BeamOrder::Gaussian: return 1;
    case BeamOrder::LGPlus: return 2;
    case BeamOrder::LGMinus: return 0;
  }
  return 1;
}

// J_n for |n| <= 3 from a precomputed J_0..J_3 table.
double bessel_from(const std::array<double, 4>& table, int n) {
  const double v = table[std::abs(n)];
  return (n < 0 && (-n) % 2 == 1) ? -v : v;
}

// s-summed mode-sum integrand at transverse wavenumber k_t.
//
// With kappa_mu = A(k_t) (k_z + s k) / k the helicity sum gives the weights
// 2 k_t^2 / k^2 (eps_minus), 2 (2k^2 - k_t^2) / k^2 (eps_plus) and
// 2 k_t k_z / k^2 (z) on top of the mode-function prefactors.
struct ModeSum {
  double k;
  cd xi;
  double in_rayleigh;
  BeamOrder order;
  int m;
  CylPoint p;

  std::array<cd, 3> operator()(double k_t, double k_z) const {
    const double k2 = k * k;
    // A(k_t) without the exponential; the 1/(4 pi) of F_mu is folded in.
    cd amplitude = (order == BeamOrder::Gaussian) ? 0.25 * (k_t / k) * xi
                                                  : 0.25 * (k_t * k_t / k2) * (xi * xi / in_rayleigh);
    amplitude *= std::exp(-k_t * k_t * xi / (2.0 * k) + kI * (k_z * p.z));
    const auto j = numerics::bessel_j0123(k_t * p.rho);
    const cd rot = std::exp(kI * p.phi);
    const cd rot_m = std::pow(rot, m);
    std::array<cd, 3> out;
    out[0] = amplitude * (2.0 * k_t * k_t / k2) * bessel_from(j, m + 1) * rot_m * rot;
    out[1] = amplitude * (2.0 * (2.0 * k2 - k_t * k_t) / k2) * bessel_from(j, m - 1) * rot_m / rot;
    out[2] = amplitude * (-kI * std::sqrt(2.0)) * (2.0 * k_t * k_z / k2) * bessel_from(j, m) * rot_m;
    return out;
  }
};

// Number of equal initial pieces: roughly one per 2 pi of accumulated phase of
// exp(i k_z z + i k_t^2 z_0 / 2k), plus the Bessel oscillations.
int initial_pieces(double k, const DerivedBeamParams& d, const CylPoint& p, double theta_max) {
  constexpr int samples = 64;
  double variation = 0.0;
  double previous = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double theta = theta_max * i / samples;
    const double phase = k * std::cos(theta) * p.z + 0.5 * k * d.z_0 * std::sin(theta) * std::sin(theta);
    if (i > 0) variation += std::abs(phase - previous);
    previous = phase;
  }
  variation += k * std::sin(theta_max) * p.rho;
  const int n = static_cast<int>(std::ceil(variation / (2.0 * kPi))) + 1;
  return std::clamp(n, 1, 4000);
}

const char* component_name(int c) {
  static const char* names[] = {"E_minus", "E_plus", "E_z"};
  return names[std::clamp(c, 0, 2)];
}

std::string describe(const CylPoint& p) {
  std::ostringstream os;
  os << "(rho=" << p.rho << ", phi=" << p.phi << ", z=" << p.z << ")";
  return os.str();
}

}  // namespace

std::string to_string(BeamOrder order) {
  switch (order) {
    case BeamOrder::Gaussian: return "gaussian";
    case BeamOrder::LGPlus: return "lg-plus";
    case BeamOrder::LGMinus: return "lg-minus";
  }
  return "gaussian";
}

BeamOrder beam_order_from_string(const std::string& name) {
  if (name == "gaussian") return BeamOrder::Gaussian;
  if (name == "lg-plus") return BeamOrder::LGPlus;
  if (name == "lg-minus") return BeamOrder::LGMinus;
  throw std::invalid_argument("unknown beam order '" + name + "'");
}

std::vector<std::string> BeamSpec::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(wavelength)) throw std::invalid_argument("wavelength must be positive");
  if (!positive(focal_length)) throw std::invalid_argument("focal length must be positive");
  if (!positive(in_rayleigh)) throw std::invalid_argument("incoming Rayleigh range must be positive");
  std::vector<std::string> warnings;
  if (k() * in_rayleigh < 100.0) {
    warnings.push_back("k * z_in = " + std::to_string(k() * in_rayleigh) +
                       " < 100: incoming beam is not well described as paraxial");
  }
  return warnings;
}

BeamSpec beam_with_rayleigh(double focal_length, double z_r, double wavelength, BeamOrder order) {
  if (!(z_r > 0.0) || z_r > 0.5 * focal_length) {
    throw std::invalid_argument("beam_with_rayleigh: need 0 < z_R <= f/2");
  }
  const double ratio = 2.0 * z_r / focal_length;
  BeamSpec spec;
  spec.wavelength = wavelength;
  spec.focal_length = focal_length;
  spec.in_rayleigh = focal_length / ratio * (1.0 + std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
  spec.order = order;
  return spec;
}

BeamSpec beam_with_width(double focal_length, double w, double wavelength) {
  return beam_with_rayleigh(focal_length, kPi * w * w * wavelength, wavelength);
}

DerivedBeamParams derive_params(const BeamSpec& spec) {
  spec.validate();
  const double q = spec.in_rayleigh / spec.focal_length;
  DerivedBeamParams d;
  d.z_r = spec.in_rayleigh / (1.0 + q * q);
  d.z_0 = spec.in_rayleigh * q / (1.0 + q * q);
  d.xi = cd(d.z_r, -d.z_0);
  d.w = std::sqrt(d.z_r / (kPi * spec.wavelength));
  return d;
}

cd kappa_gaussian(const BeamSpec& spec, const modes::ModeIndex& idx) {
  idx.validate();
  if (idx.m != 1) return 0.0;
  const auto d = derive_params(spec);
  const double k = idx.k;
  return kPi * (idx.k_t / k) * ((idx.k_z() + idx.s * k) / k) * d.xi *
         std::exp(-idx.k_t * idx.k_t / (2.0 * k) * d.xi);
}

cd kappa_lg(const BeamSpec& spec, const modes::ModeIndex& idx) {
  idx.validate();
  if (spec.order == BeamOrder::Gaussian) {
    throw std::invalid_argument("kappa_lg: beam order is Gaussian");
  }
  if (idx.m != angular_index(spec.order)) return 0.0;
  const auto d = derive_params(spec);
  const double k = idx.k;
  return kPi * (idx.k_t * idx.k_t / (k * k)) * ((idx.k_z() + idx.s * k) / k) *
         (d.xi * d.xi / spec.in_rayleigh) * std::exp(-idx.k_t * idx.k_t / (2.0 * k) * d.xi);
}

cd kappa(const BeamSpec& spec, const modes::ModeIndex& idx) {
  return spec.order == BeamOrder::Gaussian ? kappa_gaussian(spec, idx) : kappa_lg(spec, idx);
}

double FieldSample::norm() const {
  return std::sqrt(std::norm(e_plus) + std::norm(e_minus) + std::norm(e_z));
}

FieldSample field_exact(const BeamSpec& spec, const CylPoint& p, const numerics::QuadratureSpec& quad,
                        SpectralVariable variable) {
  const auto d = derive_params(spec);
  const double k = spec.k();
  const ModeSum integrand{k, d.xi, spec.in_rayleigh, spec.order, angular_index(spec.order), p};

  const double k_t_max = std::min(k, envelope_cutoff(k, d.z_r));
  const double theta_max = std::asin(std::min(1.0, k_t_max / k));
  const int pieces = initial_pieces(k, d, p, theta_max);

  numerics::QuadratureResult<std::array<cd, 3>> result;
  try {
    if (variable == SpectralVariable::Angle) {
      auto f = [&](double theta) {
        const double c = std::cos(theta);
        auto v = integrand(k * std::sin(theta), k * c);
        for (auto& x : v) x *= k * c;
        return v;
      };
      result = numerics::integrate<std::array<cd, 3>>(f, 0.0, theta_max, quad, pieces);
    } else {
      auto f = [&](double k_t) { return integrand(k_t, std::sqrt(std::max(0.0, k * k - k_t * k_t))); };
      result = numerics::integrate<std::array<cd, 3>>(f, 0.0, k_t_max, quad, pieces);
    }
  } catch (const numerics::QuadratureError& e) {
    throw FieldEvaluationError(std::string("field_exact: ") + component_name(e.component()) + " at " +
                                   describe(p) + ": " + e.what(),
                               component_name(e.component()), p);
  }

  FieldSample out;
  out.point = p;
  out.e_minus = result.value[0];
  out.e_plus = result.value[1];
  out.e_z = result.value[2];
  out.error = result.error;
  out.evaluations = result.evaluations;
  return out;
}

FieldSample field_paraxial(const BeamSpec& spec, const CylPoint& p) {
  if (spec.order != BeamOrder::Gaussian) {
    throw std::invalid_argument("field_paraxial: only the Gaussian order has a paraxial form");
  }
  const auto d = derive_params(spec);
  const double k = spec.k();
  const cd z_w(d.z_r, p.z - d.z_0);
  FieldSample out;
  out.point = p;
  out.e_plus = d.xi * std::exp(kI * k * p.z) / z_w * std::exp(-k * p.rho * p.rho / (2.0 * z_w));
  return out;
}

ParaxialCorrections paraxial_decomposition(const BeamSpec& spec, const CylPoint& p,
                                           const numerics::QuadratureSpec& quad) {
  if (spec.order != BeamOrder::Gaussian) {
    throw std::invalid_argument("paraxial_decomposition: requires the Gaussian order");
  }
  const auto d = derive_params(spec);
  const double k = spec.k();
  const cd z_w(d.z_r, p.z - d.z_0);
  const cd gauss_arg = k * p.rho * p.rho / (2.0 * z_w);

  ParaxialCorrections out;
  out.f1 = (2.0 / z_w - 2.0 / (k * z_w * z_w) * (1.0 - gauss_arg)) * std::exp(-gauss_arg);

  auto base = [&](double k_t) {
    return (k_t / k) * ((2.0 * k * k - k_t * k_t) / (k * k)) * numerics::bessel_j(0, k_t * p.rho) *
           std::exp(-k_t * k_t * z_w / (2.0 * k));
  };

  const double k_t_cut = envelope_cutoff(k, d.z_r);
  const double theta_max = std::asin(std::min(1.0, k_t_cut / k));
  const int pieces = initial_pieces(k, d, p, theta_max);

  // Residual phase k_z - k + k_t^2/2k written without cancellation.
  auto f2 = [&](double theta) {
    const double k_t = k * std::sin(theta);
    const double k_z = k * std::cos(theta);
    const double residual = -std::pow(k_t, 4) / (2.0 * k * (k + k_z) * (k + k_z));
    const double half = 0.5 * residual * p.z;
    const cd bracket = 2.0 * kI * std::sin(half) * std::exp(kI * half);
    return base(k_t) * bracket * k_z;
  };
  try {
    out.f2 = numerics::integrate<cd>(f2, 0.0, theta_max, quad, pieces).value;
    if (k_t_cut > k) {
      const int tail_pieces = std::clamp(
          static_cast<int>(std::ceil((k_t_cut - k) * (p.rho + std::abs(p.z - d.z_0) * k_t_cut / k) /
                                     (2.0 * kPi))) + 1,
          1, 4000);
      out.f3 = numerics::integrate<cd>(base, k, k_t_cut, quad, tail_pieces).value;
    }
  } catch (const numerics::QuadratureError& e) {
    throw FieldEvaluationError(std::string("paraxial_decomposition at ") + describe(p) + ": " + e.what(),
                               "E_plus", p);
  }
  return out;
}

double incoming_power(const BeamSpec& spec) {
  spec.validate();
  const double k = spec.k();
  const double scale = std::norm(spec.drive_amplitude);
  if (spec.order == BeamOrder::Gaussian) return scale * kPi * spec.in_rayleigh / k;
  // |rho/z_in exp(-k rho^2 / 2 z_in)|^2 integrated over the plane.
  return scale * kPi / (k * k);
}

}  // namespace focus::beams
