#pragma once

// Laurent coefficients of the inverse Boettcher map
//
//   psi(w) = w + sum_{k>=1} b_k w^{-k},   psi(w^2) = psi(w)^2 + c,
//
// of q_c(z) = z^2 + c. Matching the coefficient of w^{-n} gives, with b_0 = 0,
//
//   b_{n+1} = ( [n even] b_{n/2} - sum_{i=0}^{n} b_i b_{n-i} - [n = 0] c ) / 2.
//
// The convolution vanishes for odd n (all even-index coefficients are zero), so
// every even b_k is stored as an exact zero and never computed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gronwall/error.hpp"
#include "gronwall/params.hpp"

namespace gronwall {

class CoefficientTable;
double residual(const CoefficientTable& table, double r, std::size_t samples);

/// Immutable table b_1..b_N for one value of c.
class CoefficientTable {
public:
  static constexpr double kResidualRadius = 2.0;
  static constexpr std::size_t kResidualSamples = 64;

  /// `coefficients[k-1]` holds b_k. Even-index entries must be exactly zero.
  CoefficientTable(Complex c, std::vector<Complex> coefficients)
      : c_(c), b_(std::move(coefficients)) {
    if (b_.empty()) throw std::invalid_argument("coefficient table must hold N >= 1 entries");
    if (!std::isfinite(c_.real()) || !std::isfinite(c_.imag()))
      throw std::invalid_argument("c must be finite");
    for (std::size_t k = 2; k <= b_.size(); k += 2) {
      if (b_[k - 1] != Complex{}) {
        throw std::invalid_argument("even-index coefficient b_" + std::to_string(k) +
                                    " is not zero");
      }
    }
    residual_ = gronwall::residual(*this, kResidualRadius, kResidualSamples);
  }

  Complex c() const noexcept { return c_; }
  std::size_t size() const noexcept { return b_.size(); }

  /// b_k for 1 <= k <= size().
  Complex b(std::size_t k) const { return b_.at(k - 1); }

  std::span<const Complex> coefficients() const noexcept { return b_; }

  /// Functional-equation residual at |w| = 2 over 64 samples.
  double residual() const noexcept { return residual_; }

  /// Table restricted to b_1..b_n.
  CoefficientTable prefix(std::size_t n) const {
    if (n > b_.size()) throw InsufficientCoefficients(n, b_.size());
    return CoefficientTable(c_, std::vector<Complex>(b_.begin(), b_.begin() + n));
  }

private:
  Complex c_;
  std::vector<Complex> b_;
  double residual_ = 0.0;
};

namespace detail {

inline void check_coefficient_request(Complex c, std::size_t n) {
  if (n == 0) throw std::invalid_argument("truncation order N must be >= 1");
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    throw std::invalid_argument("c must be finite");
}

/// Naive recursion with the symmetric/odd-only convolution. Returns b_1..b_N.
inline std::vector<Complex> naive_coefficients(Complex c, std::size_t n_max) {
  // b[k] holds b_k; b[0] = 0.
  std::vector<Complex> b(n_max + 1);
  b[1] = -c / 2.0;
  for (std::size_t n = 2; n < n_max; n += 2) {
    // S_n = sum_{i+j=n} b_i b_j over odd i, j.
    Complex s{};
    const std::size_t half = n / 2;
    for (std::size_t i = 1; i < half; i += 2) s += b[i] * b[n - i];
    s *= 2.0;
    if (half % 2 == 1) s += b[half] * b[half];
    b[n + 1] = (b[half] - s) / 2.0;
  }
  b.erase(b.begin());
  return b;
}

}  // namespace detail

/// Reference O(N^2) path. Deterministic: identical (c, N) give bit-identical tables.
inline CoefficientTable compute_coefficients(Complex c, std::size_t n) {
  detail::check_coefficient_request(c, n);
  return CoefficientTable(c, detail::naive_coefficients(c, n));
}

/// w + sum_{k=1}^{N} b_k w^{-k}, accumulated from k = N downwards.
inline Complex evaluate_psi(const CoefficientTable& table, Complex w) {
  if (!(std::abs(w) > 1.0)) throw std::domain_error("evaluate_psi requires |w| > 1");
  const Complex u = 1.0 / w;
  const auto b = table.coefficients();
  Complex acc{};
  for (std::size_t k = b.size(); k-- > 0;) acc = (acc + b[k]) * u;
  return w + acc;
}

/// max |psi(w^2) - psi(w)^2 - c| over `samples` equispaced points of |w| = r.
inline double residual(const CoefficientTable& table, double r, std::size_t samples) {
  if (!(r >= 2.0)) throw std::domain_error("residual requires r >= 2");
  if (samples == 0) throw std::invalid_argument("residual requires samples >= 1");
  double worst = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const Complex w =
        r * unit_root(static_cast<double>(j) / static_cast<double>(samples));
    const Complex p = evaluate_psi(table, w);
    const Complex err = evaluate_psi(table, w * w) - p * p - table.c();
    worst = std::max(worst, std::abs(err));
  }
  return worst;
}

}  // namespace gronwall
