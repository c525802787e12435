#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace focus {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

namespace numerics {

/// Tolerances and work limit for adaptive quadrature.
struct QuadratureSpec {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 20000;

  void validate() const;
};

template <typename Value>
struct QuadratureResult {
  Value value{};
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

/// Thrown when the subdivision budget runs out before the error target is met.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate_error, int component)
      : std::runtime_error(what), error_(estimate_error), component_(component) {}

  double error_estimate() const { return error_; }
  /// Index of the component with the largest error (0 for scalar integrands).
  int component() const { return component_; }

 private:
  double error_;
  int component_;
};

/// Bessel function of the first kind J_n(x), |n| <= 3, x >= 0.
double bessel_j(int order, double x);

/// J_0(x) .. J_3(x) computed together.
std::array<double, 4> bessel_j0123(double x);

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478506, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd Kronrod nodes (1, 3, ..., 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename Value>
struct ValueTraits;

template <>
struct ValueTraits<double> {
  static constexpr int size = 1;
  static double abs(const double& v, int) { return std::abs(v); }
};

template <>
struct ValueTraits<cd> {
  static constexpr int size = 1;
  static double abs(const cd& v, int) { return std::abs(v); }
};

template <std::size_t N>
struct ValueTraits<std::array<cd, N>> {
  static constexpr int size = static_cast<int>(N);
  static double abs(const std::array<cd, N>& v, int i) { return std::abs(v[i]); }
};

template <typename Value>
Value scaled(const Value& v, double s) {
  if constexpr (std::is_arithmetic_v<Value> || std::is_same_v<Value, cd>) {
    return v * s;
  } else {
    Value out = v;
    for (auto& x : out) x *= s;
    return out;
  }
}

template <typename Value>
void accumulate(Value& acc, const Value& v, double w) {
  if constexpr (std::is_arithmetic_v<Value> || std::is_same_v<Value, cd>) {
    acc += w * v;
  } else {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
  }
}

template <typename Value>
void add_into(Value& acc, const Value& v, double sign = 1.0) {
  accumulate(acc, v, sign);
}

template <typename Value>
struct Segment {
  double a, b;
  Value value;
  double error;       // max over components
  int worst;          // component carrying `error`
  std::array<double, 8> component_error{};
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename Value, typename F>
Segment<Value> kronrod21(const F& f, double a, double b) {
  using Traits = ValueTraits<Value>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Value kronrod{};
  Value gauss{};
  const Value fc = f(center);
  accumulate(kronrod, fc, kKronrodWeights[10]);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Value f1 = f(center - dx);
    const Value f2 = f(center + dx);
    accumulate(kronrod, f1, kKronrodWeights[j]);
    accumulate(kronrod, f2, kKronrodWeights[j]);
    if (j % 2 == 1) {
      accumulate(gauss, f1, kGaussWeights[j / 2]);
      accumulate(gauss, f2, kGaussWeights[j / 2]);
    }
  }
  kronrod = scaled(kronrod, half);
  gauss = scaled(gauss, half);

  Segment<Value> seg{a, b, kronrod, 0.0, 0, {}};
  Value diff = kronrod;
  add_into(diff, gauss, -1.0);
  static_assert(Traits::size <= 8);
  for (int i = 0; i < Traits::size; ++i) {
    const double e = Traits::abs(diff, i);
    seg.component_error[i] = e;
    if (e > seg.error) {
      seg.error = e;
      seg.worst = i;
    }
  }
  return seg;
}

}  // namespace detail

/// Adaptive 21-point Gauss-Kronrod quadrature over [a, b].
///
/// Works for real, complex and fixed-size complex-array integrands. The
/// interval is first cut into `initial_pieces` equal parts; afterwards the
/// segment with the largest error is bisected until the summed error of every
/// component is below max(relative_tolerance * |I|, absolute_tolerance), where
/// |I| is the largest component modulus. Throws QuadratureError when the
/// subdivision budget is exhausted.
template <typename Value, typename F>
QuadratureResult<Value> integrate(const F& f, double a, double b, const QuadratureSpec& spec,
                                  int initial_pieces = 1) {
  using Traits = detail::ValueTraits<Value>;
  spec.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate: require finite a < b");
  }
  initial_pieces = std::max(1, initial_pieces);

  std::priority_queue<detail::Segment<Value>> heap;
  int evaluations = 0;
  const double width = (b - a) / initial_pieces;
  for (int i = 0; i < initial_pieces; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_pieces) ? b : a + (i + 1) * width;
    heap.push(detail::kronrod21<Value>(f, lo, hi));
    evaluations += 21;
  }

  auto totals = [&](Value& sum, std::array<double, 8>& err) {
    sum = Value{};
    err.fill(0.0);
    auto copy = heap;
    while (!copy.empty()) {
      const auto& s = copy.top();
      detail::add_into(sum, s.value);
      for (int i = 0; i < Traits::size; ++i) err[i] += s.component_error[i];
      copy.pop();
    }
  };

  // Running sums avoid walking the heap on every iteration.
  Value sum{};
  std::array<double, 8> err{};
  totals(sum, err);

  int subdivisions = initial_pieces;
  for (;;) {
    double magnitude = 0.0;
    for (int i = 0; i < Traits::size; ++i) magnitude = std::max(magnitude, Traits::abs(sum, i));
    const double target = std::max(spec.relative_tolerance * magnitude, spec.absolute_tolerance);
    int worst = 0;
    double worst_err = 0.0;
    for (int i = 0; i < Traits::size; ++i) {
      if (err[i] > worst_err) {
        worst_err = err[i];
        worst = i;
      }
    }
    if (worst_err <= target) {
      return {sum, worst_err, evaluations, static_cast<int>(heap.size())};
    }
    if (subdivisions >= spec.max_subdivisions) {
      throw QuadratureError("integrate: no convergence after " + std::to_string(subdivisions) +
                                " subdivisions (error " + std::to_string(worst_err) +
                                ", target " + std::to_string(target) + ")",
                            worst_err, worst);
    }
    const auto top = heap.top();
    heap.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (!(mid > top.a && mid < top.b)) {
      throw QuadratureError("integrate: interval collapsed to machine precision", worst_err, worst);
    }
    auto left = detail::kronrod21<Value>(f, top.a, mid);
    auto right = detail::kronrod21<Value>(f, mid, top.b);
    evaluations += 42;
    ++subdivisions;

    detail::add_into(sum, top.value, -1.0);
    detail::add_into(sum, left.value);
    detail::add_into(sum, right.value);
    for (int i = 0; i < Traits::size; ++i) {
      err[i] += left.component_error[i] + right.component_error[i] - top.component_error[i];
    }
    heap.push(std::move(left));
    heap.push(std::move(right));

    // Refresh the running sums now and then to shed cancellation drift.
    if (subdivisions % 256 == 0) totals(sum, err);
  }
}

/// Complex-valued convenience wrapper.
QuadratureResult<cd> integrate_complex(const std::function<cd(double)>& f, double a, double b,
                                       const QuadratureSpec& spec = {}, int initial_pieces = 1);

}  // namespace numerics
}  // namespace focus
