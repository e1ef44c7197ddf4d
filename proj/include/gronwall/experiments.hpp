#pragma once

// Drivers behind the command-line tool: cardioid sweeps of the truncated area,
// the near-parabolic discrepancy experiment, finite-time Lavaurs maps and the
// double Mandelbrot set.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gronwall/area_formula.hpp"
#include "gronwall/area_oracle.hpp"
#include "gronwall/bottcher.hpp"
#include "gronwall/coefficient_cache.hpp"
#include "gronwall/dynamics.hpp"
#include "gronwall/error.hpp"
#include "gronwall/parallel.hpp"
#include "gronwall/params.hpp"

namespace gronwall {

inline constexpr std::size_t kDefaultCoefficientBudget = 20000;
inline constexpr std::size_t kLargeCoefficientBudget = 200000;

struct ComputeOptions {
  Algorithm algorithm = Algorithm::naive;
  std::size_t budget = kDefaultCoefficientBudget;
  unsigned workers = 0;
  std::optional<CoefficientCache> cache;
};

/// Rough wall-clock estimate in seconds for one table of n coefficients.
inline double estimated_seconds(std::size_t n, Algorithm algorithm) {
  const double x = static_cast<double>(n);
  if (algorithm == Algorithm::fast) {
    const double lg = std::log2(std::max(2.0, x));
    return 2e-8 * x * lg * lg;
  }
  return 2e-9 * x * x / 8.0;
}

// ---------------------------------------------------------------------------
// Cardioid sweep

struct SweepRecord {
  double t = 0.0;
  Complex lambda;
  Complex c;
  std::map<std::size_t, double> values;  // level N -> A(lambda, r, N)

  bool non_increasing() const {
    double prev = INFINITY;
    for (const auto& [level, a] : values) {
      if (a > prev) return false;
      prev = a;
    }
    return true;
  }
};

namespace detail {
inline void validate_levels(const std::vector<std::size_t>& levels) {
  if (levels.empty()) throw std::invalid_argument("at least one truncation level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == 0) throw std::invalid_argument("truncation levels must be positive");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw std::invalid_argument("truncation levels must be strictly ascending");
  }
}
}  // namespace detail

/// One sweep row: coefficients once at the largest level, then every truncation.
inline SweepRecord make_sweep_record(const ParameterPoint& point,
                                     const std::vector<std::size_t>& levels, double r,
                                     const ComputeOptions& options) {
  detail::validate_levels(levels);
  const std::size_t top = levels.back();
  if (top > options.budget) throw BudgetExceeded(top, options.budget);
  const CoefficientTable table = obtain_coefficients(point.c, top, options.algorithm, options.cache);
  SweepRecord rec{point.t.value_or(0.0), point.lambda, point.c, {}};
  for (std::size_t level : levels) rec.values[level] = truncated_area_value(table, r, level);
  return rec;
}

/// `steps` equispaced rotation numbers from t_start to t_end inclusive.
inline std::vector<double> sweep_rotation_numbers(double t_start, double t_end, std::size_t steps) {
  if (!(0.0 <= t_start && t_start < t_end && t_end <= 1.0))
    throw std::invalid_argument("sweep requires 0 <= t_start < t_end <= 1");
  if (steps == 0) throw std::invalid_argument("sweep requires at least one step");
  std::vector<double> ts(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    ts[i] = steps == 1 ? t_start
                       : t_start + (t_end - t_start) * static_cast<double>(i) /
                                       static_cast<double>(steps - 1);
  }
  return ts;
}

inline std::vector<SweepRecord> sweep_cardioid(double t_start, double t_end, std::size_t steps,
                                               const std::vector<std::size_t>& levels,
                                               double r = 1.0,
                                               const ComputeOptions& options = {}) {
  detail::validate_levels(levels);
  if (!(r >= 1.0)) throw std::domain_error("sweep requires r >= 1");
  if (levels.back() > options.budget) throw BudgetExceeded(levels.back(), options.budget);
  const auto ts = sweep_rotation_numbers(t_start, t_end, steps);
  std::vector<SweepRecord> rows(ts.size());
  parallel_for_index(ts.size(), options.workers, [&](std::size_t i) {
    rows[i] = make_sweep_record(cardioid_point(ts[i]), levels, r, options);
  });
  return rows;
}

/// 17 significant digits, '.' as decimal separator regardless of locale.
/// Negative zero prints as 0.
inline std::string format_real(double x) {
  if (x == 0.0) x = 0.0;
  std::array<char, 40> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

/// header t,re_lambda,im_lambda,re_c,im_c,A_N<L1>,... then one LF-terminated row per record.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows,
                            const std::vector<std::size_t>& levels) {
  out << "t,re_lambda,im_lambda,re_c,im_c";
  for (std::size_t level : levels) out << ",A_N" << level;
  out << '\n';
  for (const auto& row : rows) {
    out << format_real(row.t) << ',' << format_real(row.lambda.real()) << ','
        << format_real(row.lambda.imag()) << ',' << format_real(row.c.real()) << ','
        << format_real(row.c.imag());
    for (std::size_t level : levels) out << ',' << format_real(row.values.at(level));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Near-parabolic discrepancy

struct DiscrepancyReport {
  double alpha = 0.0;
  int m = 0;
  double tau = 0.0;
  double gamma = 0.0;
  double R = 0.0;
  Complex lambda;
  std::size_t N = 0;
  bool N_capped = false;
  double A_1N = 0.0;
  AreaEstimate area_K_lambda;
  AreaEstimate area_K_1;
  AreaEstimate iter_area;
  double measured_gap = 0.0;  // A_1N - area_K_lambda.value, kept even when negative
};

struct ParabolicOptions {
  double tol = 0.02;
  std::size_t max_resolution = 2048;
  std::size_t max_iter = 2000;
  ComputeOptions compute;
};

/// lambda = e^{2 i pi / (m + tau)}. Writing alpha = 1/(m + tau) with integer m
/// keeps the fractional part of 1/alpha equal to tau.
inline Complex near_parabolic_lambda(int m, double tau) {
  return unit_root(1.0 / (static_cast<double>(m) + tau));
}

/// floor(e^{gamma (m + tau)}), snapping values within 1e-9 (relative) of an
/// integer first so that e.g. gamma = log(2)/2, m = 16 gives exactly 256.
inline std::size_t parabolic_truncation(double gamma, int m, double tau) {
  const double x = std::exp(gamma * (static_cast<double>(m) + tau));
  if (!std::isfinite(x) || x >= 1e18) return static_cast<std::size_t>(1e18);
  const double nearest = std::round(x);
  const double snapped = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::floor(x);
  return std::max<std::size_t>(1, static_cast<std::size_t>(snapped));
}

inline DiscrepancyReport parabolic_discrepancy(int m, double tau, double gamma, double R,
                                               const ParabolicOptions& options = {}) {
  if (m < 4) throw std::invalid_argument("parabolic experiment requires m >= 4");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(R > kEscapeRadius)) throw std::domain_error("parabolic experiment requires R > 6");

  DiscrepancyReport rep;
  rep.m = m;
  rep.tau = tau;
  rep.gamma = gamma;
  rep.R = R;
  rep.alpha = 1.0 / (static_cast<double>(m) + tau);
  rep.lambda = near_parabolic_lambda(m, tau);
  rep.N = parabolic_truncation(gamma, m, tau);
  if (rep.N > options.compute.budget) {
    rep.N = options.compute.budget;
    rep.N_capped = true;
  }
  const Complex c = lambda_to_c(rep.lambda);
  const auto table =
      obtain_coefficients(c, rep.N, options.compute.algorithm, options.compute.cache);
  rep.A_1N = truncated_area_value(table, 1.0, rep.N);

  const unsigned workers = options.compute.workers;
  rep.area_K_lambda = refine_until(FilledJulia{rep.lambda}, options.tol, options.max_resolution,
                                   options.max_iter, workers);
  rep.area_K_1 = refine_until(FilledJulia{Complex{1.0, 0.0}}, options.tol,
                              options.max_resolution, options.max_iter, workers);
  rep.iter_area = grid_area(IterateSublevel{rep.lambda, static_cast<std::size_t>(m), R},
                            rep.area_K_lambda.resolution, options.max_iter, workers);
  rep.measured_gap = rep.A_1N - rep.area_K_lambda.value;
  return rep;
}

// ---------------------------------------------------------------------------
// Lavaurs maps

/// f_lambda^m(z) with lambda = e^{2 i pi/(m + tau)}: the finite-time
/// approximation of the Lavaurs map of phase tau on the interior of K_1.
inline Complex lavaurs_approx(int m, double tau, Complex z) {
  if (m < 1) throw std::invalid_argument("lavaurs_approx requires m >= 1");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  const Complex lambda = near_parabolic_lambda(m, tau);
  for (int i = 0; i < m; ++i) {
    z = step(lambda, z);
    if (!(std::abs(z) <= kOverflowGuard)) throw OrbitEscaped(static_cast<std::size_t>(i + 1));
  }
  return z;
}

// ---------------------------------------------------------------------------
// Double Mandelbrot set

inline constexpr double kDoubleMandelbrotReMin = -2.5;
inline constexpr double kDoubleMandelbrotReMax = 3.5;
inline constexpr double kDoubleMandelbrotImMax = 2.0;

/// Escape of the critical orbit beyond radius 6 proves lambda is outside the
/// connectedness locus; otherwise the verdict is inside_so_far.
inline JuliaVerdict classify_parameter(Complex lambda, std::size_t max_iter) {
  return in_filled_julia(lambda, critical_point(lambda), max_iter);
}

/// Grid over [-2.5, 3.5] x [-2, 2] with `resolution` columns and square cells
/// (2/3 as many rows). 255 = inside so far, 0 = escaped.
inline ClassificationGrid render_double_mandelbrot(std::size_t resolution, std::size_t max_iter,
                                                   unsigned workers = 0) {
  if (resolution < 64) throw std::invalid_argument("double Mandelbrot resolution must be >= 64");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
  const double span = kDoubleMandelbrotReMax - kDoubleMandelbrotReMin;
  const double h = span / static_cast<double>(resolution);
  const auto rows = static_cast<std::size_t>(std::lround(2.0 * kDoubleMandelbrotImMax / h));
  ClassificationGrid grid{resolution, rows, std::vector<std::uint8_t>(resolution * rows)};
  parallel_for_index(rows, workers, [&](std::size_t row) {
    const double y = kDoubleMandelbrotImMax - (static_cast<double>(row) + 0.5) * h;
    for (std::size_t col = 0; col < resolution; ++col) {
      const double x = kDoubleMandelbrotReMin + (static_cast<double>(col) + 0.5) * h;
      grid.cells[row * resolution + col] = classify_parameter({x, y}, max_iter).escaped
                                               ? ClassificationGrid::kOutside
                                               : ClassificationGrid::kInside;
    }
  });
  return grid;
}

}  // namespace gronwall
