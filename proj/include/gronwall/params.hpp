#pragma once

// Parameter-space arithmetic for the two quadratic families
//   f_lambda(z) = lambda*z + z^2   and   q_c(z) = z^2 + c,
// which are affinely conjugate through z -> z + lambda/2 when
// c = (lambda/2)(1 - lambda/2).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>

namespace gronwall {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

struct ParameterPoint {
  std::optional<double> t;      // rotation number, lambda = e^{2 i pi t}
  std::optional<double> alpha;  // representative of t used to build lambda
  Complex lambda;
  Complex c;
};

inline Complex lambda_to_c(Complex lambda) {
  const Complex half = lambda / 2.0;
  return half * (1.0 - half);
}

/// e^{2 i pi t}, exact at multiples of 1/4. The angle is reduced to the
/// nearest quarter turn so that t and 1 - t give exactly conjugate results.
inline Complex unit_root(double t) {
  double x = t - std::floor(t);
  const double quarter = std::floor(4.0 * x + 0.5);
  const double rem = x - quarter / 4.0;  // in [-1/8, 1/8]
  const double cr = std::cos(2.0 * kPi * rem);
  const double sr = std::sin(2.0 * kPi * rem);
  switch (static_cast<int>(quarter) & 3) {
    case 0: return {cr, sr};
    case 1: return {-sr, cr};
    case 2: return {-cr, -sr};
    default: return {sr, -cr};
  }
}

inline ParameterPoint from_lambda(Complex lambda) {
  return ParameterPoint{std::nullopt, std::nullopt, lambda, lambda_to_c(lambda)};
}

/// Point on the boundary of the main cardioid with rotation number t.
inline ParameterPoint cardioid_point(double t) {
  const Complex lambda = unit_root(t);
  return ParameterPoint{t, t, lambda, lambda_to_c(lambda)};
}

/// The finite critical point -lambda/2 of z -> lambda*z + z^2.
inline Complex critical_point(Complex lambda) { return -lambda / 2.0; }

/// Both roots of lambda^2 - 2 lambda + 4c = 0, i.e. the two lambda values
/// sharing the same c. They are exchanged by lambda -> 2 - lambda.
inline std::pair<Complex, Complex> c_to_lambdas(Complex c) {
  const Complex root = std::sqrt(1.0 - 4.0 * c);
  return {1.0 + root, 1.0 - root};
}

}  // namespace gronwall
