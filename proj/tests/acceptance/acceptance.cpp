// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gronwall.hpp"

namespace fs = std::filesystem;
using gronwall::Complex;
using gronwall::kPi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = "\"" GRONWALL_CLI_PATH "\" " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Shared between criteria 8 and 9.
std::optional<gronwall::DiscrepancyReport> parabolic16;

}  // namespace

int main() {
  report(1, "Chebyshev exactness", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto coeffs = run_cli("coeffs --c -2,0 --n 64");
    const auto area = run_cli("area --c -2,0 --r 1 --n 64");
    const double secs = seconds_since(t0);
    if (coeffs.code != 0 || area.code != 0) return Outcome{false, "CLI exited with an error"};
    std::istringstream in(coeffs.out);
    std::string line;
    double b1 = NAN, max_rest = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
      std::istringstream row(line);
      std::string k, re, im;
      std::getline(row, k, ',');
      std::getline(row, re, ',');
      std::getline(row, im, ',');
      const double mag = std::abs(Complex(std::stod(re), std::stod(im)));
      if (std::stoul(k) == 1) {
        b1 = std::stod(re);
        if (std::stod(im) != 0.0) b1 = NAN;
      } else {
        max_rest = std::max(max_rest, mag);
      }
      ++rows;
    }
    const double a = std::stod(area.out);
    const bool ok = rows == 64 && std::abs(b1 - 1.0) <= 1e-14 && max_rest <= 1e-12 &&
                    std::abs(a) <= 1e-12 && secs < 1.0;
    return Outcome{ok, fmt("b_1=%.17g max|b_k>=2|=%.3g |A|=%.3g rows=%zu runtime=%.3fs", b1,
                           max_rest, std::abs(a), rows, secs)};
  });

  report(2, "Squaring-map exactness", [] {
    const std::size_t n_max = 100000;
    const auto table = gronwall::compute_coefficients(0.0, n_max);
    bool zero = true;
    for (const Complex& b : table.coefficients()) zero = zero && b == Complex(0.0, 0.0);
    const double ulp = std::nextafter(kPi, 4.0) - kPi;
    double worst = 0.0;
    for (std::size_t n : std::vector<std::size_t>{1, 10, 100, 1000, 10000, 99999, n_max})
      worst = std::max(worst, std::abs(gronwall::truncated_area_value(table, 1.0, n) - kPi));
    return Outcome{zero && worst <= ulp,
                   fmt("all zero=%d max|A-pi|=%.3g (1 ulp=%.3g) up to N=%zu", zero, worst, ulp, n_max)};
  });

  report(3, "Functional-equation residual", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ur(0.0, 2.0), ua(-kPi, kPi);
    double worst256 = 0.0;
    int not_smaller = 0;
    for (int i = 0; i < 20; ++i) {
      const Complex c = std::polar(ur(rng), ua(rng));
      const double r256 = gronwall::compute_coefficients(c, 256).residual();
      const double r512 = gronwall::compute_coefficients(c, 512).residual();
      worst256 = std::max(worst256, r256);
      if (!(r512 < r256)) ++not_smaller;
    }
    const double secs = seconds_since(t0);
    return Outcome{worst256 <= 1e-6 && not_smaller == 0 && secs < 5.0,
                   fmt("max residual(N=256)=%.3g; N=512 not strictly smaller in %d/20; runtime=%.2fs",
                       worst256, not_smaller, secs)};
  });

  report(4, "Monotonicity", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::size_t> levels{1, 20, 200, 2000};
    const auto rows = gronwall::sweep_cardioid(0.0, 0.5, 65, levels);
    const double secs = seconds_since(t0);
    int bad_rows = 0;
    double worst_level1 = 0.0;
    for (const auto& row : rows) {
      if (!row.non_increasing()) ++bad_rows;
      worst_level1 = std::max(
          worst_level1, std::abs(row.values.at(1) - kPi * (1.0 - std::norm(row.c) / 4.0)));
    }
    return Outcome{rows.size() == 65 && bad_rows == 0 && worst_level1 <= 1e-12 && secs < 120.0,
                   fmt("rows=%zu non-monotone=%d max level-1 error=%.3g runtime=%.1fs", rows.size(),
                       bad_rows, worst_level1, secs)};
  });

  report(5, "Area inequality suite", [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 0.5);
    const double rs[] = {1.01, 1.05, 1.1};
    const std::size_t ns[] = {8, 64, 512};
    const double R = 12.0;
    int failed = 0, configs = 0;
    for (int i = 0; i < 50; ++i) {
      double t = ut(rng);
      while (t == 0.0) t = ut(rng);
      const double r = rs[i % 3];
      const std::size_t n = ns[(i / 3) % 3];
      const auto p = gronwall::cardioid_point(t);
      const auto table = gronwall::compute_coefficients(p.c, 4096);
      const double a_1n = gronwall::truncated_area_value(table, 1.0, n);
      const auto series = gronwall::series_sublevel_area(table, r);
      const std::size_t iters = gronwall::iterations_for_level(R, std::log(r));
      const auto est = gronwall::grid_area(gronwall::IterateSublevel{p.lambda, iters, R}, 256, 100);
      const bool ok =
          gronwall::truncation_lower_bound(a_1n, series, r, n).holds &&
          gronwall::sandwich_lower_bound(
              a_1n, {est.lower, est.width(), gronwall::AreaSource::pixel_oracle}, r, n, R, p.lambda)
              .holds &&
          gronwall::sublevel_upper_bound(a_1n, series, r, n).holds;
      if (!ok) ++failed;
      ++configs;
    }
    return Outcome{failed == 0, fmt("%d/%d configurations failed", failed, configs)};
  });

  report(6, "Oracle calibration", [] {
    auto timed = [](const gronwall::RegionSpec& region, std::size_t res) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto e = gronwall::grid_area(region, res, 200);
      return std::pair{e, seconds_since(t0)};
    };
    const auto [disk, t_disk] = timed(gronwall::FilledJulia{0.0}, 2048);
    const auto [green, t_green] = timed(gronwall::GreenSublevel{0.0, std::log(2.0)}, 2048);
    const auto [seg, t_seg] = timed(gronwall::FilledJulia{4.0}, 4096);
    const bool ok = std::abs(disk.value - kPi) <= 0.01 * kPi &&
                    std::abs(green.value - 4.0 * kPi) <= 0.04 * kPi && seg.upper <= 0.05 &&
                    std::max({t_disk, t_green, t_seg}) < 60.0;
    return Outcome{ok, fmt("K_0=%.5f (pi=%.5f), V_0(log2)=%.5f (4pi=%.5f), K_4 upper=%.4f; "
                           "runtimes %.1f/%.1f/%.1fs",
                           disk.value, kPi, green.value, 4.0 * kPi, seg.upper, t_disk, t_green, t_seg)};
  });

  report(7, "Basilica cross-validation", [] {
    const Complex c(-1.0, 0.0);
    const double a = gronwall::truncated_area_value(gronwall::compute_coefficients(c, 20000), 1.0, 20000);
    const Complex lambda = gronwall::c_to_lambdas(c).first;
    const auto pix = gronwall::refine_until(gronwall::FilledJulia{lambda}, 0.02, 2048, 2000);
    const double diff = std::abs(a - pix.value);
    const double tol = std::max(0.03, pix.width());
    return Outcome{diff <= tol, fmt("A(c=-1,1,20000)=%.6f pixel=%.6f [%.6f, %.6f] res=%zu |diff|=%.4f "
                                    "tol=%.4f",
                                    a, pix.value, pix.lower, pix.upper, pix.resolution, diff, tol)};
  });

  report(8, "Near-parabolic discrepancy", [] {
    const auto t0 = std::chrono::steady_clock::now();
    parabolic16 = gronwall::parabolic_discrepancy(16, 0.0, std::log(2.0) / 2.0, 12.0);
    const double secs = seconds_since(t0);
    const auto& rep = *parabolic16;
    const double oracle_gap = rep.area_K_1.value - rep.area_K_lambda.value;
    const bool a = rep.A_1N >= rep.area_K_1.lower - 0.05 * rep.area_K_1.value;
    const bool b = rep.measured_gap >= 0.5 * oracle_gap && oracle_gap > 0.1;
    return Outcome{a && b && secs < 300.0,
                   fmt("N=%zu A_1N=%.5f K_1=%.5f [%.5f, %.5f] K_lambda=%.5f gap=%.5f oracle gap=%.5f "
                       "(a)=%d (b)=%d runtime=%.1fs",
                       rep.N, rep.A_1N, rep.area_K_1.value, rep.area_K_1.lower, rep.area_K_1.upper,
                       rep.area_K_lambda.value, rep.measured_gap, oracle_gap, a, b, secs)};
  });

  report(9, "Parabolic-limit stability", [] {
    const std::size_t n = 256;
    auto area_at = [n](int m) {
      const Complex c = gronwall::lambda_to_c(gronwall::near_parabolic_lambda(m, 0.0));
      return gronwall::truncated_area_value(gronwall::compute_coefficients(c, n), 1.0, n);
    };
    const double a16 = area_at(16), a24 = area_at(24);
    const double k1 = parabolic16 ? parabolic16->area_K_1.value
                                  : gronwall::refine_until(gronwall::FilledJulia{1.0}, 0.02, 2048, 2000).value;
    const double diff = std::abs(a16 - a24);
    const bool ok = diff < 0.05 && std::abs(a16 - k1) <= 0.05 * k1 && std::abs(a24 - k1) <= 0.05 * k1;
    return Outcome{ok, fmt("A(m=16)=%.5f A(m=24)=%.5f |diff|=%.4f (limit 0.05); K_1=%.5f, "
                           "relative offsets %.4f/%.4f (limit 0.05)",
                           a16, a24, diff, k1, std::abs(a16 - k1) / k1, std::abs(a24 - k1) / k1)};
  });

  report(10, "Lavaurs convergence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const Complex a = gronwall::lavaurs_approx(32, 0.0, -0.5);
    const Complex b = gronwall::lavaurs_approx(64, 0.0, -0.5);
    const double secs = seconds_since(t0);
    const double d = std::abs(a - b);
    return Outcome{d < 0.05 && secs < 1.0,
                   fmt("f^32=(%.5f,%.5f) f^64=(%.5f,%.5f) |diff|=%.4f", a.real(), a.imag(), b.real(),
                       b.imag(), d)};
  });

  report(11, "Determinism", [] {
    const auto dir = fs::temp_directory_path() / "gronwall_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string sweep = "sweep --t0 0 --t1 0.5 --steps 33 --levels 1,20,200,2000 --out ";
    const std::string pixel =
        "pixel-area --region julia --lambda -1.2360679774997898,0 --resolution 512 --max-iter 500 "
        "--pgm ";
    const std::string mandel = "double-mandelbrot --resolution 300 --max-iter 200 --pgm ";
    struct Job {
      std::string args;
      std::string ext;
    };
    const std::vector<Job> jobs{{sweep, "csv"}, {pixel, "pgm"}, {mandel, "mandel.pgm"}};
    int mismatches = 0, errors = 0;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      std::vector<std::string> outputs;
      for (const char* threads : {"1", "1", "8", "8"}) {
        const auto path = dir / ("run" + std::to_string(outputs.size()) + "." + jobs[j].ext);
        if (run_cli(jobs[j].args + path.string() + " --threads " + threads).code != 0) ++errors;
        outputs.push_back(slurp(path));
      }
      for (const auto& o : outputs)
        if (o != outputs.front() || o.empty()) ++mismatches;
    }
    fs::remove_all(dir);
    return Outcome{mismatches == 0 && errors == 0,
                   fmt("sweep CSV, julia PGM, double Mandelbrot PGM over threads {1,1,8,8}: "
                       "%d mismatches, %d failed runs",
                       mismatches, errors)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
