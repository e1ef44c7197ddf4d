#pragma once

// Truncated Gronwall area sums for quadratic Julia sets and the inequalities
// that relate them to areas of Green sublevel sets V(log r).
//
//   A(lambda, r, N) = pi * ( r^2 - sum_{k=1}^{N} k |b_k|^2 r^{-2k} ).
//
// For lambda in the connectedness locus, A(lambda, r, infinity) is the area of
// V(log r), and A(lambda, 1, N) decreases to the area of the filled Julia set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "gronwall/bottcher.hpp"
#include "gronwall/error.hpp"
#include "gronwall/params.hpp"

namespace gronwall {

struct TruncatedArea {
  ParameterPoint parameter;
  double r = 1.0;
  std::size_t N = 0;
  double value = 0.0;
};

/// pi * sum_{k=1}^{N} k |b_k|^2 r^{-2k}, added from k = N down to 1.
inline double weighted_coefficient_sum(const CoefficientTable& table, double r, std::size_t n) {
  if (!(r >= 1.0)) throw std::domain_error("truncated area requires r >= 1");
  if (n > table.size()) throw InsufficientCoefficients(n, table.size());
  const auto b = table.coefficients();
  double sum = 0.0;
  if (r == 1.0) {
    for (std::size_t k = n; k >= 1; --k) sum += static_cast<double>(k) * std::norm(b[k - 1]);
  } else {
    const double log_r2 = 2.0 * std::log(r);
    for (std::size_t k = n; k >= 1; --k) {
      const double bk2 = std::norm(b[k - 1]);
      if (bk2 == 0.0) continue;
      sum += static_cast<double>(k) * bk2 * std::exp(-log_r2 * static_cast<double>(k));
    }
  }
  return sum;
}

inline double truncated_area_value(const CoefficientTable& table, double r, std::size_t n) {
  if (n == 0) throw std::invalid_argument("truncation order N must be >= 1");
  return kPi * (r * r - weighted_coefficient_sum(table, r, n));
}

inline TruncatedArea truncated_area(const ParameterPoint& point, const CoefficientTable& table,
                                    double r, std::size_t n) {
  if (std::abs(point.c - table.c()) > 1e-12 * std::max(1.0, std::abs(point.c)))
    throw std::invalid_argument("parameter point does not match the coefficient table");
  return TruncatedArea{point, r, n, truncated_area_value(table, r, n)};
}

inline TruncatedArea truncated_area(const CoefficientTable& table, double r, std::size_t n) {
  return TruncatedArea{ParameterPoint{{}, {}, {}, table.c()}, r, n,
                       truncated_area_value(table, r, n)};
}

// ---------------------------------------------------------------------------
// Inequality checks

enum class AreaSource { given, truncated_series, pixel_oracle, closed_form };

inline std::string_view to_string(AreaSource s) {
  switch (s) {
    case AreaSource::given: return "given";
    case AreaSource::truncated_series: return "truncated_series";
    case AreaSource::pixel_oracle: return "pixel_oracle";
    case AreaSource::closed_form: return "closed_form";
  }
  return "unknown";
}

/// An area estimate fed into a check; `width` is its uncertainty (interval width
/// or tail bound), zero for exact values.
struct AreaInput {
  double value = 0.0;
  double width = 0.0;
  AreaSource source = AreaSource::given;

  AreaInput() = default;
  AreaInput(double v) : value(v) {}  // NOLINT: plain numbers are exact inputs
  AreaInput(double v, double w, AreaSource s) : value(v), width(w), source(s) {}
};

struct BoundCheck {
  bool holds = false;
  double lhs = 0.0;    // A(lambda, 1, N)
  double bound = 0.0;  // right-hand side as written
  double slack = 0.0;
  AreaSource source = AreaSource::given;

  explicit operator bool() const noexcept { return holds; }
};

inline constexpr double kRelativeSlack = 1e-9;

namespace detail {

inline double slack_for(std::initializer_list<double> magnitudes) {
  double m = 1.0;
  for (double x : magnitudes) m = std::max(m, std::abs(x));
  return kRelativeSlack * m;
}

inline void require_r_above_one(double r) {
  if (!(r > 1.0)) throw std::domain_error("inequality checks require r > 1");
}

inline void require_positive_order(std::size_t n) {
  if (n == 0) throw std::domain_error("inequality checks require N >= 1");
}

}  // namespace detail

/// A(lambda,1,N) >= pi (1 - r^{2N+2}) + r^{2N} A(lambda,r,inf), valid when
/// G_lambda(critical point) <= log r.
inline BoundCheck truncation_lower_bound(double a_1n, AreaInput a_r_inf, double r, std::size_t n) {
  detail::require_r_above_one(r);
  detail::require_positive_order(n);
  const double r2n = std::pow(r, 2.0 * static_cast<double>(n));
  const double r2n2 = r2n * r * r;
  BoundCheck check;
  check.lhs = a_1n;
  check.bound = kPi * (1.0 - r2n2) + r2n * a_r_inf.value;
  check.slack = detail::slack_for({a_1n, kPi * r2n2, r2n * a_r_inf.value}) + r2n * a_r_inf.width;
  check.source = a_r_inf.source;
  check.holds = check.lhs >= check.bound - check.slack;
  return check;
}

/// Smallest p >= 0 such that |f^p(z)| <= R forces G(z) <= g (for |lambda| <= 5):
///   p = ceil( (log log(11R/6) - log g) / log 2 ).
/// Quotients within 1e-9 of an integer are snapped to it before the ceiling.
inline std::size_t iterations_for_level(double R, double g) {
  if (!(R > 6.0)) throw std::domain_error("iterations_for_level requires R > 6");
  if (!(g > 0.0)) throw std::domain_error("iterations_for_level requires g > 0");
  const double q = (std::log(std::log(11.0 * R / 6.0)) - std::log(g)) / std::log(2.0);
  const double nearest = std::round(q);
  const double p = std::abs(q - nearest) <= 1e-9 ? nearest : std::ceil(q);
  if (p < 0.0) throw std::domain_error("level g too large: iteration count would be negative");
  return static_cast<std::size_t>(p);
}

/// Lower bound pi (1 - r^{2N+2}) + r^{2N} Area{|f^p(z)| <= R} on A(lambda,1,N),
/// where iter_area was measured with p = iterations_for_level(R, log r).
inline BoundCheck sandwich_lower_bound(double a_1n, AreaInput iter_area, double r, std::size_t n,
                                       double R, Complex lambda) {
  if (!(R > 6.0)) throw std::domain_error("sandwich bound requires R > 6");
  if (!(r > 1.0 && r < 11.0 * R / 6.0))
    throw std::domain_error("sandwich bound requires 1 < r < 11R/6");
  if (!(std::abs(lambda) < 5.0)) throw std::domain_error("sandwich bound requires |lambda| < 5");
  return truncation_lower_bound(a_1n, iter_area, r, n);
}

/// A(lambda,1,N) <= Area(V(log r)) + pi r^{-2(N+1)}.
///
/// The exponent is the one produced by the tail estimate
/// sum_{k>N} k|b_k|^2 r^{-2k} <= r^{-2(N+1)}; the positive exponent sometimes
/// quoted for this bound grows without limit in N.
inline BoundCheck sublevel_upper_bound(double a_1n, AreaInput sublevel_area, double r,
                                      std::size_t n) {
  detail::require_r_above_one(r);
  detail::require_positive_order(n);
  BoundCheck check;
  check.lhs = a_1n;
  check.bound = sublevel_area.value + kPi * std::pow(r, -2.0 * static_cast<double>(n + 1));
  check.slack = detail::slack_for({a_1n, sublevel_area.value}) + sublevel_area.width;
  check.source = sublevel_area.source;
  check.holds = check.lhs <= check.bound + check.slack;
  return check;
}

/// Area(V(log r)) from the truncated series, with the tail bound pi r^{-2(N+1)}
/// (valid for parameters in the connectedness locus) as its width.
inline AreaInput series_sublevel_area(const CoefficientTable& table, double r) {
  detail::require_r_above_one(r);
  const std::size_t n = table.size();
  const double tail = kPi * std::pow(r, -2.0 * static_cast<double>(n + 1));
  return AreaInput(truncated_area_value(table, r, n), tail, AreaSource::truncated_series);
}

}  // namespace gronwall
