#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/poly.hpp"
#include "hardy/sampling.hpp"

namespace hardy {

struct GalleryParams {
  double sigma = 0.51;     ///< zeta_shift exponent
  std::uint64_t seed = 0;  ///< random_* families
};

inline const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"c0", "zeta_shift", "random_pm1", "random_unimodular"};
  return names;
}

/// Canonical series of a given size N:
///   c0                 sum_{n<=N} e_n n^{-s} in (C^N, l_infinity)
///   zeta_shift         sum_{n<=N} n^{-sigma} n^{-s}
///   random_pm1         independent signs, seeded
///   random_unimodular  independent uniform phases, seeded
inline DirichletPoly gallery(std::string_view name, std::uint64_t size, const GalleryParams& params = {}) {
  if (size < 1) throw std::invalid_argument("gallery size must be >= 1");
  if (name == "c0") {
    const CoeffSpaceSpec space(size, NormKind::LInf);
    DirichletPoly d(space);
    for (std::uint64_t n = 1; n <= size; ++n) d.set(n, CoeffVector::unit(space, n - 1));
    return d;
  }
  DirichletPoly d;
  if (name == "zeta_shift") {
    for (std::uint64_t n = 1; n <= size; ++n) d.set(n, cplx(std::pow(static_cast<double>(n), -params.sigma)));
    return d;
  }
  if (name == "random_pm1" || name == "random_unimodular") {
    auto eng = stream_engine(params.seed, name == "random_pm1" ? 1 : 2);
    for (std::uint64_t n = 1; n <= size; ++n) {
      const std::uint64_t bits = eng();
      if (name == "random_pm1") {
        d.set(n, cplx(bits >> 63 ? 1.0 : -1.0));
      } else {
        d.set(n, std::polar(1.0, 2.0 * std::numbers::pi * detail::unit_double(bits)));
      }
    }
    return d;
  }
  throw std::invalid_argument("unknown gallery entry '" + std::string(name) + "'");
}

}  // namespace hardy
