#pragma once

// O(N log^2 N) coefficient path. The self-convolution in the recursion is
// evaluated online by divide and conquer: once b[l, mid) is final, its
// contribution to the targets [mid, r) is added with one FFT product, so
// every pair (i, j) is accumulated exactly once before b_{i+j+1} is needed.
//
// Requires linking against FFTW3 (double precision).

#include <fftw3.h>

#include <bit>
#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

#include "gronwall/bottcher.hpp"

namespace gronwall {
namespace detail {

// fftw_plan_* and fftw_destroy_plan are not thread-safe; fftw_execute is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
public:
  explicit FftBuffer(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data_ == nullptr) throw std::bad_alloc();
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  ~FftBuffer() { fftw_free(data_); }

  fftw_complex* raw() noexcept { return data_; }
  std::complex<double>* data() noexcept { return reinterpret_cast<std::complex<double>*>(data_); }
  std::size_t size() const noexcept { return n_; }

private:
  std::size_t n_;
  fftw_complex* data_;
};

class FftPlan {
public:
  FftPlan(FftBuffer& buf, int sign) {
    std::lock_guard lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(buf.size()), buf.raw(), buf.raw(), sign,
                             FFTW_ESTIMATE);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

private:
  fftw_plan plan_ = nullptr;
};

inline constexpr std::size_t kDirectConvolutionCutoff = 64;

/// out[t] += scale * sum_{i+j=t} x[i] y[j] for t < out.size().
inline void convolve_add(std::span<const Complex> x, std::span<const Complex> y,
                         std::span<Complex> out, double scale) {
  if (x.empty() || y.empty() || out.empty()) return;
  if (std::min(x.size(), y.size()) <= kDirectConvolutionCutoff) {
    for (std::size_t i = 0; i < x.size() && i < out.size(); ++i) {
      if (x[i] == Complex{}) continue;
      const std::size_t jmax = std::min(y.size(), out.size() - i);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] += scale * x[i] * y[j];
    }
    return;
  }
  const std::size_t n = std::bit_ceil(x.size() + y.size() - 1);
  FftBuffer fx(n), fy(n);
  std::fill(fx.data(), fx.data() + n, Complex{});
  std::fill(fy.data(), fy.data() + n, Complex{});
  std::copy(x.begin(), x.end(), fx.data());
  std::copy(y.begin(), y.end(), fy.data());
  FftPlan forward_x(fx, FFTW_FORWARD), forward_y(fy, FFTW_FORWARD);
  FftPlan backward(fx, FFTW_BACKWARD);
  forward_x.execute();
  forward_y.execute();
  for (std::size_t k = 0; k < n; ++k) fx.data()[k] *= fy.data()[k];
  backward.execute();
  const double norm = scale / static_cast<double>(n);
  const std::size_t m = std::min(out.size(), n);
  for (std::size_t t = 0; t < m; ++t) out[t] += fx.data()[t] * norm;
}

class OnlineSolver {
public:
  OnlineSolver(Complex c, std::size_t size) : c_(c), b_(size), acc_(size) {}

  void solve(std::size_t l, std::size_t r) {
    if (r - l == 1) {
      finalize(l);
      return;
    }
    const std::size_t mid = l + (r - l) / 2;
    solve(l, mid);
    std::span<const Complex> all(b_);
    std::span<Complex> targets(acc_.begin() + mid, acc_.begin() + r);
    // acc_[t] collects pairs with i + j = t - 1, so pair sums start at mid - 1.
    if (l == 0) {
      const auto head = all.subspan(0, mid);
      std::vector<Complex> tmp(r);
      convolve_add(head, head, tmp, 1.0);
      // tmp[s] holds the pair sum s; target t = s + 1.
      for (std::size_t t = mid; t < r; ++t) {
        targets[t - mid] += tmp[t - 1];
      }
    } else {
      // Cross pairs i in [l, mid), j in [0, r - l); both orders counted.
      const auto block = all.subspan(l, mid - l);
      const auto low = all.subspan(0, r - l);
      std::vector<Complex> tmp(r - l);
      convolve_add(block, low, tmp, 2.0);
      // tmp[k] is the pair sum s = l + k; target t = s + 1.
      for (std::size_t t = mid; t < r; ++t) {
        targets[t - mid] += tmp[t - 1 - l];
      }
    }
    solve(mid, r);
  }

  std::vector<Complex> take(std::size_t n) && {
    b_.resize(n + 1);
    b_.erase(b_.begin());
    return std::move(b_);
  }

private:
  void finalize(std::size_t t) {
    if (t == 0 || t % 2 == 0) {
      b_[t] = Complex{};
      return;
    }
    const std::size_t n = t - 1;
    const Complex half_term = (n >= 2) ? b_[n / 2] : Complex{};
    const Complex constant = (n == 0) ? c_ : Complex{};
    b_[t] = (half_term - acc_[t] - constant) / 2.0;
  }

  Complex c_;
  std::vector<Complex> b_;
  std::vector<Complex> acc_;
};

}  // namespace detail

/// FFT-accelerated coefficients. Agrees with compute_coefficients to ~1e-15 per
/// coefficient but is not bit-identical to it.
inline CoefficientTable compute_coefficients_fast(Complex c, std::size_t n) {
  detail::check_coefficient_request(c, n);
  const std::size_t size = std::bit_ceil(n + 1);
  detail::OnlineSolver solver(c, size);
  solver.solve(0, size);
  return CoefficientTable(c, std::move(solver).take(n));
}

}  // namespace gronwall
