// Command-line front end: coefficient tables, truncated areas, cardioid sweeps,
// pixel-counted areas, the near-parabolic experiment, Lavaurs maps and the
// double Mandelbrot set.
//
// Exit codes: 0 success, 2 invalid arguments, 3 coefficient budget refusal.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gronwall.hpp"
#include "gronwall/json_report.hpp"

namespace {

using gronwall::Complex;

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

double parse_real(std::string_view text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return x;
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected RE,IM but got '" + text + "'");
  return {parse_real(std::string_view(text).substr(0, comma)),
          parse_real(std::string_view(text).substr(comma + 1))};
}

std::vector<std::size_t> parse_levels(const std::string& text) {
  std::vector<std::size_t> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    const auto* end = item.data() + item.size();
    const auto res = std::from_chars(item.data(), end, v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != end)
      throw std::invalid_argument("bad truncation level '" + item + "'");
    levels.push_back(v);
  }
  return levels;
}

struct CommonFlags {
  bool fast = false;
  bool allow_large = false;
  unsigned threads = 0;
};

gronwall::ComputeOptions compute_options(const CommonFlags& flags, std::size_t largest_n) {
  gronwall::ComputeOptions opt;
  opt.algorithm = flags.fast ? gronwall::Algorithm::fast : gronwall::Algorithm::naive;
  opt.workers = flags.threads;
  opt.cache = gronwall::CoefficientCache::from_environment();
  if (flags.allow_large) {
    opt.budget = gronwall::kLargeCoefficientBudget;
    if (largest_n > gronwall::kDefaultCoefficientBudget) {
      std::fprintf(stderr, "note: %zu coefficients per table, estimated %.1f s per table\n",
                   largest_n, gronwall::estimated_seconds(largest_n, opt.algorithm));
    }
  }
  if (largest_n > opt.budget) throw gronwall::BudgetExceeded(largest_n, opt.budget);
  return opt;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_flag("--fast", flags.fast, "FFT-based coefficient recursion");
  cmd->add_flag("--allow-large", flags.allow_large,
                "raise the coefficient budget to " +
                    std::to_string(gronwall::kLargeCoefficientBudget));
  cmd->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
}

std::ofstream open_output(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Gronwall area formula for quadratic Julia sets"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string c_text, lambda_text, z_text, out_path, pgm_path, levels_text, region = "julia";
  std::size_t n = 0, steps = 0, resolution = 0, max_iter = 0, p = 0,
              max_resolution = 2048;
  double r = 1.0, t0 = 0.0, t1 = 0.0, g = 0.0, radius = 12.0, tau = 0.0, gamma = 0.0,
         tol = 0.02;
  int m = 0;

  auto* coeffs = app.add_subcommand("coeffs", "Laurent coefficients b_1..b_N of psi for z^2+c");
  coeffs->add_option("--c", c_text, "parameter c as RE,IM")->required();
  coeffs->add_option("--n", n, "number of coefficients")->required();
  coeffs->add_option("--out", out_path, "write the binary coefficient file here");
  add_common(coeffs, flags);

  auto* area = app.add_subcommand("area", "truncated area A(c, r, N)");
  area->add_option("--c", c_text, "parameter c as RE,IM")->required();
  area->add_option("--r", r, "radius r >= 1")->required();
  area->add_option("--n", n, "truncation order")->required();
  add_common(area, flags);

  auto* sweep = app.add_subcommand("sweep", "truncated areas along the main cardioid");
  sweep->add_option("--t0", t0, "first rotation number")->required();
  sweep->add_option("--t1", t1, "last rotation number")->required();
  sweep->add_option("--steps", steps, "number of rotation numbers")->required();
  sweep->add_option("--levels", levels_text, "ascending truncation levels L1,L2,...")->required();
  sweep->add_option("--r", r, "radius r >= 1");
  sweep->add_option("--out", out_path, "CSV output file")->required();
  add_common(sweep, flags);

  auto* pixel = app.add_subcommand("pixel-area", "grid-counted area with an uncertainty interval");
  pixel->add_option("--region", region, "julia | green | iter")
      ->check(CLI::IsMember({"julia", "green", "iter"}));
  pixel->add_option("--lambda", lambda_text, "parameter lambda as RE,IM")->required();
  pixel->add_option("--g", g, "Green level (green region)");
  pixel->add_option("--p", p, "iteration count (iter region)");
  pixel->add_option("--radius", radius, "escape radius R > 6 (iter region)");
  pixel->add_option("--resolution", resolution, "cells per axis")->required();
  pixel->add_option("--max-iter", max_iter, "iteration cap")->required();
  pixel->add_option("--pgm", pgm_path, "write the classification grid as PGM");
  pixel->add_option("--threads", flags.threads, "worker threads (0 = all cores)");

  auto* parabolic = app.add_subcommand("parabolic", "truncated area versus pixel areas near lambda = 1");
  parabolic->add_option("--m", m, "integer part of 1/alpha")->required();
  parabolic->add_option("--tau", tau, "fractional part of 1/alpha")->required();
  parabolic->add_option("--gamma", gamma, "N = floor(exp(gamma/alpha))")->required();
  parabolic->add_option("--radius", radius, "escape radius R > 6")->required();
  parabolic->add_option("--out", out_path, "JSON report file")->required();
  parabolic->add_option("--tol", tol, "target pixel interval width");
  parabolic->add_option("--max-resolution", max_resolution, "largest grid resolution");
  parabolic->add_option("--max-iter", max_iter, "iteration cap (default 2000)");
  add_common(parabolic, flags);

  auto* lavaurs = app.add_subcommand("lavaurs", "finite-time Lavaurs map f^m(z)");
  lavaurs->add_option("--m", m, "number of iterates")->required();
  lavaurs->add_option("--tau", tau, "phase")->required();
  lavaurs->add_option("--z", z_text, "point as RE,IM")->required();

  auto* mandel = app.add_subcommand("double-mandelbrot", "connectedness locus of lambda z + z^2");
  mandel->add_option("--resolution", resolution, "columns")->required();
  mandel->add_option("--max-iter", max_iter, "iteration cap")->required();
  mandel->add_option("--pgm", pgm_path, "PGM output file")->required();
  mandel->add_option("--threads", flags.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (coeffs->parsed()) {
      const auto opt = compute_options(flags, n);
      const auto table = gronwall::obtain_coefficients(parse_complex(c_text), n, opt.algorithm,
                                                       opt.cache);
      if (!out_path.empty()) {
        gronwall::save_coefficients(out_path, table);
      }
      std::cout << "# c=" << gronwall::format_real(table.c().real()) << ','
                << gronwall::format_real(table.c().imag()) << " N=" << table.size()
                << " residual=" << gronwall::format_real(table.residual()) << '\n';
      std::cout << "k,re,im\n";
      for (std::size_t k = 1; k <= table.size(); ++k) {
        std::cout << k << ',' << gronwall::format_real(table.b(k).real()) << ','
                  << gronwall::format_real(table.b(k).imag()) << '\n';
      }
    } else if (area->parsed()) {
      const auto opt = compute_options(flags, n);
      if (!(r >= 1.0)) throw std::domain_error("--r must be >= 1");
      const auto table = gronwall::obtain_coefficients(parse_complex(c_text), n, opt.algorithm,
                                                       opt.cache);
      std::cout << gronwall::format_real(gronwall::truncated_area_value(table, r, n)) << '\n';
    } else if (sweep->parsed()) {
      const auto levels = parse_levels(levels_text);
      gronwall::detail::validate_levels(levels);
      const auto opt = compute_options(flags, levels.back());
      const auto rows = gronwall::sweep_cardioid(t0, t1, steps, levels, r, opt);
      auto out = open_output(out_path, true);
      gronwall::write_sweep_csv(out, rows, levels);
    } else if (pixel->parsed()) {
      const Complex lambda = parse_complex(lambda_text);
      gronwall::RegionSpec spec;
      if (region == "julia") {
        spec = gronwall::FilledJulia{lambda};
      } else if (region == "green") {
        if (pixel->count("--g") == 0) throw std::invalid_argument("--region green requires --g");
        spec = gronwall::GreenSublevel{lambda, g};
      } else {
        if (pixel->count("--p") == 0) throw std::invalid_argument("--region iter requires --p");
        spec = gronwall::IterateSublevel{lambda, p, radius};
      }
      const auto result = gronwall::classify_region(spec, resolution, max_iter, flags.threads);
      if (!pgm_path.empty()) {
        auto out = open_output(pgm_path, true);
        gronwall::write_pgm(out, result.grid);
      }
      std::cout << gronwall::to_json(result.estimate).dump(2) << '\n';
    } else if (parabolic->parsed()) {
      gronwall::ParabolicOptions opt;
      const std::size_t wanted = gronwall::parabolic_truncation(gamma, m, tau);
      // Requests above the budget are capped and flagged in the report rather than refused.
      const std::size_t budget = flags.allow_large ? gronwall::kLargeCoefficientBudget
                                                   : gronwall::kDefaultCoefficientBudget;
      opt.compute = compute_options(flags, std::min(wanted, budget));
      opt.tol = tol;
      opt.max_resolution = max_resolution;
      if (max_iter != 0) opt.max_iter = max_iter;
      const auto rep = gronwall::parabolic_discrepancy(m, tau, gamma, radius, opt);
      auto out = open_output(out_path, true);
      out << gronwall::to_json(rep).dump(2) << '\n';
      if (rep.N_capped)
        std::fprintf(stderr, "warning: N capped at %zu (requested %zu)\n", rep.N, wanted);
    } else if (lavaurs->parsed()) {
      const Complex w = gronwall::lavaurs_approx(m, tau, parse_complex(z_text));
      std::cout << gronwall::format_real(w.real()) << ',' << gronwall::format_real(w.imag())
                << '\n';
    } else if (mandel->parsed()) {
      const auto grid = gronwall::render_double_mandelbrot(resolution, max_iter, flags.threads);
      auto out = open_output(pgm_path, true);
      gronwall::write_pgm(out, grid);
    }
  } catch (const gronwall::BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "; estimated "
              << gronwall::estimated_seconds(e.required(), flags.fast ? gronwall::Algorithm::fast
                                                                      : gronwall::Algorithm::naive)
              << " s; pass --allow-large (limit " << gronwall::kLargeCoefficientBudget << ")\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gronwall::InsufficientCoefficients& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
