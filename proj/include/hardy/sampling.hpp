#pragma once

// Seeded point sets on the polytorus T^m. Sample k is drawn from its own
// generator keyed by (seed, k), so any subset of samples can be produced in
// any order, on any number of threads, with identical results.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/coeff.hpp"
#include "hardy/primes.hpp"

namespace hardy {

enum class SampleScheme {
  IidUniform,     ///< independent Haar points on T^m
  KroneckerQmc,   ///< omega_j = p_j^{-it} along the Kronecker flow, t uniform on [-T, T]
};

inline std::string_view to_string(SampleScheme s) {
  return s == SampleScheme::IidUniform ? "iid" : "kronecker";
}

inline SampleScheme parse_sample_scheme(std::string_view s) {
  if (s == "iid" || s == "IID_UNIFORM") return SampleScheme::IidUniform;
  if (s == "kronecker" || s == "KRONECKER_QMC") return SampleScheme::KroneckerQmc;
  throw std::invalid_argument("unknown sampling scheme '" + std::string(s) + "' (expected iid or kronecker)");
}

struct SamplerConfig {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  SampleScheme scheme = SampleScheme::IidUniform;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("sampler needs at least one sample");
  }
};

/// Half-width of the time window used by the Kronecker-flow scheme.
inline constexpr double kKroneckerHalfWidth = 1.0e6;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from 53 high bits.
inline double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Generator for stream `index` under `seed`.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(index + 0x632be59bd9b4e019ull)));
}

/// Writes the k-th sample point (first z.size() coordinates) into z.
/// Coordinate j of a sample does not depend on how many coordinates are
/// requested, so polynomials of different widths see the same point.
class TorusSampler {
 public:
  explicit TorusSampler(const SamplerConfig& cfg, std::size_t width) : cfg_(cfg) {
    cfg.validate();
    if (cfg.scheme == SampleScheme::KroneckerQmc) {
      log_primes_.resize(width);
      for (std::size_t j = 0; j < width; ++j) log_primes_[j] = std::log(static_cast<double>(nth_prime(j)));
    }
  }

  void point(std::uint64_t k, std::span<cplx> z) const {
    auto eng = stream_engine(cfg_.seed, k);
    if (cfg_.scheme == SampleScheme::IidUniform) {
      for (auto& zj : z) zj = std::polar(1.0, 2.0 * std::numbers::pi * detail::unit_double(eng()));
    } else {
      const double t = kKroneckerHalfWidth * (2.0 * detail::unit_double(eng()) - 1.0);
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::polar(1.0, -t * log_primes_.at(j));
    }
  }

 private:
  SamplerConfig cfg_;
  std::vector<double> log_primes_;
};

}  // namespace hardy
