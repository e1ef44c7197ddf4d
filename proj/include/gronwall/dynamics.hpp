#pragma once

// Orbits of f_lambda(z) = lambda*z + z^2 and certified Green-function values.
//
// For |lambda| <= 5 and every xi,
//   log|xi| - log 6 <= G(xi) <= max(log 11, log|xi| + log(11/6)),
// and G(f(z)) = 2 G(z). In particular G > 0 outside the disk of radius 6, so an
// orbit leaving that disk is a rigorous certificate of non-membership in K.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "gronwall/params.hpp"

namespace gronwall {

inline constexpr double kEscapeRadius = 6.0;
inline constexpr double kMaxLambdaModulus = 5.0;
inline constexpr double kOverflowGuard = 1e150;
/// Escaped orbits keep iterating up to this modulus to tighten the Green bound.
inline constexpr double kGreenRefineRadius = 1e100;

inline Complex step(Complex lambda, Complex z) { return z * (lambda + z); }

/// f^n(z), or nullopt once |z| exceeds the overflow guard.
inline std::optional<Complex> iterate(Complex lambda, Complex z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(z) > kOverflowGuard) return std::nullopt;
    z = step(lambda, z);
  }
  if (std::abs(z) > kOverflowGuard) return std::nullopt;
  return z;
}

namespace detail {
inline void require_lambda_in_range(Complex lambda) {
  if (!(std::abs(lambda) <= kMaxLambdaModulus))
    throw std::domain_error("Green estimates require |lambda| <= 5");
}
}  // namespace detail

struct GreenValue {
  double estimate = 0.0;
  double error_bound = 0.0;
  bool escaped = false;
  std::size_t iterations = 0;  // index n of the iterate the estimate is read from

  double lower() const noexcept { return estimate - error_bound; }
  double upper() const noexcept { return estimate + error_bound; }
};

/// G_lambda(z) within [estimate - error_bound, estimate + error_bound].
///
/// Escaped orbits (|z_n| > 6) report log|z_n| / 2^n with error log 6 / 2^n,
/// where n is taken as large as max_iter and |z_n| <= 1e100 allow. Orbits still
/// inside the disk of radius 6 after max_iter steps report 0 with the upper
/// bound log 11 / 2^max_iter as error.
inline GreenValue green(Complex lambda, Complex z, std::size_t max_iter) {
  detail::require_lambda_in_range(lambda);
  std::size_t n = 0;
  while (n < max_iter && std::abs(z) <= kEscapeRadius) {
    z = step(lambda, z);
    ++n;
  }
  const double two_n_initial = std::ldexp(1.0, static_cast<int>(n));
  if (std::abs(z) <= kEscapeRadius) {
    return GreenValue{0.0, std::log(11.0) / two_n_initial, false, n};
  }
  while (n < max_iter && std::abs(z) <= kGreenRefineRadius) {
    z = step(lambda, z);
    ++n;
  }
  const double two_n = std::ldexp(1.0, static_cast<int>(n));
  return GreenValue{std::log(std::abs(z)) / two_n, std::log(6.0) / two_n, true, n};
}

struct JuliaVerdict {
  bool escaped = false;
  std::size_t n = 0;  // first n with |f^n(z)| > 6, or max_iter

  static JuliaVerdict inside_so_far(std::size_t max_iter) { return {false, max_iter}; }
  static JuliaVerdict escaped_at(std::size_t n) { return {true, n}; }
  bool operator==(const JuliaVerdict&) const = default;
};

/// escaped(n) is a proof that z lies outside K_lambda; inside_so_far is inconclusive.
inline JuliaVerdict in_filled_julia(Complex lambda, Complex z, std::size_t max_iter) {
  detail::require_lambda_in_range(lambda);
  for (std::size_t n = 0; n <= max_iter; ++n) {
    if (std::norm(z) > kEscapeRadius * kEscapeRadius) return JuliaVerdict::escaped_at(n);
    if (n == max_iter) break;
    z = step(lambda, z);
  }
  return JuliaVerdict::inside_so_far(max_iter);
}

/// |f^p(z)| <= R. If p = iterations_for_level(R, g), membership implies G(z) <= g.
inline bool iter_sublevel_member(Complex lambda, Complex z, std::size_t p, double R) {
  if (!(R > kEscapeRadius)) throw std::domain_error("iterate sublevel requires R > 6");
  for (std::size_t i = 0; i < p; ++i) {
    // Once |z| > R > 6 (and |lambda| <= 5) the modulus only grows.
    if (std::norm(z) > R * R && std::abs(lambda) <= kMaxLambdaModulus) return false;
    z = step(lambda, z);
  }
  return std::norm(z) <= R * R;
}

}  // namespace gronwall
