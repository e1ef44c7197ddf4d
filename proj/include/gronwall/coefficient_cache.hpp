#pragma once

// Binary coefficient files and the on-disk cache.
//
// Layout (all little-endian):
//   "GRWL" | u32 version = 1 | f64 re(c) | f64 im(c) | u64 N | N x (f64 re, f64 im)
// with the pairs in index order b_1..b_N. A file holding N' >= N coefficients
// satisfies a request for N by prefix truncation.

#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <unistd.h>
#include <vector>

#include "gronwall/bottcher.hpp"
#include "gronwall/fast_coefficients.hpp"

namespace gronwall {

inline constexpr std::array<char, 4> kCacheMagic{'G', 'R', 'W', 'L'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr const char* kCacheDirEnv = "GRONWALL_CACHE_DIR";

enum class Algorithm { naive, fast };

inline CoefficientTable compute_coefficients(Complex c, std::size_t n, Algorithm algorithm) {
  return algorithm == Algorithm::fast ? compute_coefficients_fast(c, n)
                                      : compute_coefficients(c, n);
}

namespace detail {

template <typename UInt>
void put_le(std::ostream& out, UInt value) {
  std::array<char, sizeof(UInt)> bytes{};
  for (std::size_t i = 0; i < sizeof(UInt); ++i)
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename UInt>
UInt get_le(std::istream& in) {
  std::array<unsigned char, sizeof(UInt)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("coefficient file truncated");
  UInt value = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i)
    value |= static_cast<UInt>(bytes[i]) << (8 * i);
  return value;
}

inline void put_f64(std::ostream& out, double x) { put_le(out, std::bit_cast<std::uint64_t>(x)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

inline std::string shortest(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace detail

inline void write_coefficients(std::ostream& out, const CoefficientTable& table) {
  out.write(kCacheMagic.data(), kCacheMagic.size());
  detail::put_le<std::uint32_t>(out, kCacheVersion);
  detail::put_f64(out, table.c().real());
  detail::put_f64(out, table.c().imag());
  detail::put_le<std::uint64_t>(out, table.size());
  for (const Complex& b : table.coefficients()) {
    detail::put_f64(out, b.real());
    detail::put_f64(out, b.imag());
  }
}

/// Reads a coefficient file; with `want`, only b_1..b_want are kept.
inline CoefficientTable read_coefficients(std::istream& in,
                                          std::optional<std::size_t> want = std::nullopt) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) throw std::runtime_error("not a coefficient file (bad magic)");
  const auto version = detail::get_le<std::uint32_t>(in);
  if (version != kCacheVersion)
    throw std::runtime_error("unsupported coefficient file version " + std::to_string(version));
  const double re = detail::get_f64(in);
  const double im = detail::get_f64(in);
  const auto stored = detail::get_le<std::uint64_t>(in);
  if (stored == 0) throw std::runtime_error("coefficient file holds no coefficients");
  const std::size_t n = want.value_or(stored);
  if (n > stored) throw InsufficientCoefficients(n, stored);
  std::vector<Complex> b(n);
  for (auto& bk : b) {
    const double br = detail::get_f64(in);
    const double bi = detail::get_f64(in);
    bk = {br, bi};
  }
  return CoefficientTable({re, im}, std::move(b));
}

/// Writes to a temporary sibling and renames it into place, so readers never
/// observe a partially written file.
inline void save_coefficients(const std::filesystem::path& path, const CoefficientTable& table) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_coefficients(out, table);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline CoefficientTable load_coefficients(const std::filesystem::path& path,
                                          std::optional<std::size_t> want = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_coefficients(in, want);
}

/// `c_<re>_<im>.coeff` with shortest round-trip formatting of both parts.
inline std::string cache_file_name(Complex c) {
  return "c_" + detail::shortest(c.real()) + "_" + detail::shortest(c.imag()) + ".coeff";
}

class CoefficientCache {
public:
  explicit CoefficientCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  /// Cache rooted at $GRONWALL_CACHE_DIR, if the variable is set and non-empty.
  static std::optional<CoefficientCache> from_environment() {
    const char* dir = std::getenv(kCacheDirEnv);
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return CoefficientCache(dir);
  }

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::filesystem::path path_for(Complex c) const { return dir_ / cache_file_name(c); }

  /// A cached table with at least n coefficients for exactly this c, truncated to n.
  /// Unreadable or mismatching files count as misses.
  std::optional<CoefficientTable> lookup(Complex c, std::size_t n) const {
    const auto path = path_for(c);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
      std::ifstream in(path, std::ios::binary);
      auto table = read_coefficients(in, n);
      if (std::bit_cast<std::uint64_t>(table.c().real()) !=
              std::bit_cast<std::uint64_t>(c.real()) ||
          std::bit_cast<std::uint64_t>(table.c().imag()) !=
              std::bit_cast<std::uint64_t>(c.imag()))
        return std::nullopt;
      return table;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void store(const CoefficientTable& table) const { save_coefficients(path_for(table.c()), table); }

  CoefficientTable get_or_compute(Complex c, std::size_t n,
                                  Algorithm algorithm = Algorithm::naive) const {
    if (auto hit = lookup(c, n)) return std::move(*hit);
    auto table = compute_coefficients(c, n, algorithm);
    store(table);
    return table;
  }

private:
  std::filesystem::path dir_;
};

/// Coefficients through the cache when one is configured.
inline CoefficientTable obtain_coefficients(Complex c, std::size_t n, Algorithm algorithm,
                                            const std::optional<CoefficientCache>& cache) {
  return cache ? cache->get_or_compute(c, n, algorithm) : compute_coefficients(c, n, algorithm);
}

}  // namespace gronwall
