#pragma once

// Pixel-counting area estimates on the box [-6, 6]^2, which contains K_lambda
// whenever |lambda| <= 5.
//
// Every cell is classified by its center. A cell is undecided when its own
// classification is inconclusive (Green value within error of the level) or
// when one of its 8 neighbours was classified differently, i.e. the region
// boundary may cross it. With `value` the area of cells classified inside,
//   lower = value - area(undecided cells classified inside)
//   upper = value + area(undecided cells classified outside).
// Only escape verdicts are rigorous; the interval is a resolution-error
// estimate, not a proof.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gronwall/dynamics.hpp"
#include "gronwall/parallel.hpp"
#include "gronwall/params.hpp"

namespace gronwall {

inline constexpr double kBoxHalfWidth = 6.0;
inline constexpr double kBoxArea = 4.0 * kBoxHalfWidth * kBoxHalfWidth;
inline constexpr std::size_t kMinResolution = 16;

struct FilledJulia {
  Complex lambda;
};

struct GreenSublevel {
  Complex lambda;
  double g = 0.0;
};

struct IterateSublevel {
  Complex lambda;
  std::size_t p = 0;
  double R = 0.0;
};

using RegionSpec = std::variant<FilledJulia, GreenSublevel, IterateSublevel>;

struct AreaEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t resolution = 0;
  double undecided_area = 0.0;

  double width() const noexcept { return upper - lower; }
};

/// Row-major cell codes, row 0 at the top of the window.
struct ClassificationGrid {
  static constexpr std::uint8_t kOutside = 0;
  static constexpr std::uint8_t kUndecided = 128;
  static constexpr std::uint8_t kInside = 255;

  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> cells;

  std::uint8_t at(std::size_t row, std::size_t col) const { return cells[row * width + col]; }
};

/// Binary PGM (P5, maxval 255).
inline void write_pgm(std::ostream& out, const ClassificationGrid& grid) {
  out << "P5\n" << grid.width << ' ' << grid.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(grid.cells.data()),
            static_cast<std::streamsize>(grid.cells.size()));
}

inline Complex region_lambda(const RegionSpec& region) {
  return std::visit([](const auto& r) { return r.lambda; }, region);
}

inline void validate_region(const RegionSpec& region) {
  const Complex lambda = region_lambda(region);
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) ||
      !(std::abs(lambda) <= kMaxLambdaModulus))
    throw std::domain_error("region requires |lambda| <= 5");
  if (const auto* green = std::get_if<GreenSublevel>(&region)) {
    if (!(green->g > 0.0)) throw std::domain_error("Green sublevel requires g > 0");
    if (green->g > std::log(11.0))
      throw std::domain_error("Green sublevel with g > log 11 may leave the [-6,6]^2 box");
  }
  if (const auto* iter = std::get_if<IterateSublevel>(&region)) {
    if (!(iter->R > kEscapeRadius)) throw std::domain_error("iterate sublevel requires R > 6");
  }
}

enum class CellClass : std::uint8_t { outside, inside, ambiguous };

inline CellClass classify_point(const RegionSpec& region, Complex z, std::size_t max_iter) {
  return std::visit(
      [&](const auto& r) -> CellClass {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FilledJulia>) {
          return in_filled_julia(r.lambda, z, max_iter).escaped ? CellClass::outside
                                                                : CellClass::inside;
        } else if constexpr (std::is_same_v<T, GreenSublevel>) {
          const GreenValue gv = green(r.lambda, z, max_iter);
          if (gv.lower() > r.g) return CellClass::outside;
          if (gv.upper() <= r.g) return CellClass::inside;
          return CellClass::ambiguous;
        } else {
          return iter_sublevel_member(r.lambda, z, r.p, r.R) ? CellClass::inside
                                                             : CellClass::outside;
        }
      },
      region);
}

struct GridAreaResult {
  AreaEstimate estimate;
  ClassificationGrid grid;
};

/// Classifies a resolution x resolution grid over [-6, 6]^2. Rows are distributed
/// over `workers` threads (0 = all cores); counts are integers, so the result
/// does not depend on the worker count.
inline GridAreaResult classify_region(const RegionSpec& region, std::size_t resolution,
                                      std::size_t max_iter, unsigned workers = 0) {
  validate_region(region);
  if (resolution < kMinResolution)
    throw std::invalid_argument("grid resolution must be at least 16");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");

  const std::size_t n = resolution;
  const double h = 2.0 * kBoxHalfWidth / static_cast<double>(n);
  std::vector<CellClass> cls(n * n);
  parallel_for_index(n, workers, [&](std::size_t row) {
    const double y = kBoxHalfWidth - (static_cast<double>(row) + 0.5) * h;
    for (std::size_t col = 0; col < n; ++col) {
      const double x = -kBoxHalfWidth + (static_cast<double>(col) + 0.5) * h;
      cls[row * n + col] = classify_point(region, {x, y}, max_iter);
    }
  });

  // Ambiguous cells are counted inside; the band test uses that counted class.
  auto counted_inside = [&](std::size_t row, std::size_t col) {
    return cls[row * n + col] != CellClass::outside;
  };

  ClassificationGrid grid{n, n, std::vector<std::uint8_t>(n * n)};
  std::size_t inside = 0, undecided_in = 0, undecided_out = 0;
  bool touches_edge = false;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const bool in = counted_inside(row, col);
      bool undecided = cls[row * n + col] == CellClass::ambiguous;
      for (int dr = -1; dr <= 1 && !undecided; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const auto rr = static_cast<std::ptrdiff_t>(row) + dr;
          const auto cc = static_cast<std::ptrdiff_t>(col) + dc;
          if (rr < 0 || cc < 0 || rr >= static_cast<std::ptrdiff_t>(n) ||
              cc >= static_cast<std::ptrdiff_t>(n))
            continue;
          if (counted_inside(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)) != in) {
            undecided = true;
            break;
          }
        }
      }
      if (in) {
        ++inside;
        if (row == 0 || col == 0 || row == n - 1 || col == n - 1) touches_edge = true;
      }
      if (undecided) (in ? undecided_in : undecided_out)++;
      grid.cells[row * n + col] = undecided ? ClassificationGrid::kUndecided
                                  : in      ? ClassificationGrid::kInside
                                            : ClassificationGrid::kOutside;
    }
  }
  if (touches_edge)
    throw std::domain_error("region reaches the edge of the [-6,6]^2 box; area would be clipped");

  const double cell = h * h;
  AreaEstimate est;
  est.resolution = n;
  est.value = static_cast<double>(inside) * cell;
  est.lower = static_cast<double>(inside - undecided_in) * cell;
  est.upper = static_cast<double>(inside + undecided_out) * cell;
  est.undecided_area = static_cast<double>(undecided_in + undecided_out) * cell;
  return {est, std::move(grid)};
}

inline AreaEstimate grid_area(const RegionSpec& region, std::size_t resolution,
                              std::size_t max_iter, unsigned workers = 0) {
  return classify_region(region, resolution, max_iter, workers).estimate;
}

/// Doubles the resolution from 256 until upper - lower <= tol or the next step
/// would exceed max_resolution. The last estimate is returned either way.
inline AreaEstimate refine_until(const RegionSpec& region, double tol, std::size_t max_resolution,
                                 std::size_t max_iter, unsigned workers = 0) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine_until requires tol > 0");
  std::size_t res = std::max<std::size_t>(kMinResolution, std::min<std::size_t>(256, max_resolution));
  for (;;) {
    AreaEstimate est = grid_area(region, res, max_iter, workers);
    if (est.width() <= tol || res * 2 > max_resolution) return est;
    res *= 2;
  }
}

}  // namespace gronwall
