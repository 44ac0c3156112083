#pragma once

// Poisson kernel on the disc and the polydisc, convolution of polynomials
// with it (exact coefficient scaling, plus a grid-quadrature oracle), and
// the L_p contraction ||F_r||_p <= ||f||_p.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/norms.hpp"
#include "hardy/parallel.hpp"
#include "hardy/poly.hpp"

namespace hardy {

class RadiusVector {
 public:
  RadiusVector() = default;
  explicit RadiusVector(std::vector<double> radii) : radii_(std::move(radii)) {
    for (double r : radii_) {
      if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("radii must lie in [0, 1)");
    }
  }

  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t j) const { return radii_[j]; }
  std::span<const double> values() const { return radii_; }

  /// r^{|alpha|} = prod_j r_j^{|alpha_j|}.
  double power(const MultiIndex& alpha) const {
    double w = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j]) w *= std::pow(radii_.at(j), static_cast<double>(alpha[j]));
    }
    return w;
  }

  /// Componentwise product.
  friend RadiusVector operator*(const RadiusVector& a, const RadiusVector& b) {
    std::vector<double> r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t j = 0; j < r.size(); ++j) {
      r[j] = (j < a.size() ? a[j] : 1.0) * (j < b.size() ? b[j] : 1.0);
    }
    return RadiusVector(std::move(r));
  }

 private:
  std::vector<double> radii_;
};

/// K(omega, z) = (|omega|^2 - |z|^2) / |omega - z|^2 for |omega| = 1, |z| < 1.
inline double kernel_1d(cplx omega, cplx z) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw std::invalid_argument("kernel_1d: omega must be unimodular");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("kernel_1d: |z| must be < 1");
  return (std::norm(omega) - std::norm(z)) / std::norm(omega - z);
}

/// prod_j K(omega_j, r_j z_j).
inline double kernel_m(std::span<const cplx> omega, std::span<const cplx> z, const RadiusVector& r) {
  if (omega.size() != z.size() || z.size() != r.size()) {
    throw std::invalid_argument("kernel_m: omega, z and r must have the same length");
  }
  double k = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (std::abs(std::abs(z[j]) - 1.0) > 1e-12) throw std::invalid_argument("kernel_m: z must lie on the torus");
    k *= kernel_1d(omega[j], r[j] * z[j]);
  }
  return k;
}

/// F_r = f * K(., r.): the coefficient at alpha is multiplied by r^{|alpha|}.
inline PowerPoly poisson_convolve_exact(const PowerPoly& p, const RadiusVector& r) {
  if (r.size() < p.width()) {
    throw std::invalid_argument("radius vector has " + std::to_string(r.size()) + " entries, polynomial width is " +
                                std::to_string(p.width()));
  }
  PowerPoly out(p.space());
  for (const auto& [alpha, c] : p) out.set(alpha, c * r.power(alpha));
  return out;
}

inline constexpr std::size_t kNumericConvolutionWidthCap = 4;

/// Grid-quadrature evaluation of F_r, used to cross-check the exact path.
///
/// f is sampled on the tensor grid of G-th roots of unity, convolved with the
/// sampled kernel one coordinate at a time (the kernel is a product), and the
/// coefficients of F_r are read back with a discrete Fourier transform.
/// Requires G > 2 * (max degree per coordinate) + 1. The sampled kernel
/// aliases frequency k onto k mod G, so a coefficient of degree a carries an
/// error of order r_j^{G-a}; pick G with r_max^{G - deg} below the tolerance.
inline PowerPoly poisson_convolve_numeric(const PowerPoly& p, const RadiusVector& r, std::size_t grid_per_dim,
                                          std::size_t width_cap = kNumericConvolutionWidthCap) {
  const std::size_t m = p.width();
  if (m > width_cap) {
    throw std::invalid_argument("numeric convolution over " + std::to_string(m) + " variables exceeds the cap of " +
                                std::to_string(width_cap));
  }
  if (r.size() < m) throw std::invalid_argument("radius vector shorter than the polynomial width");
  const std::size_t g = grid_per_dim;
  for (std::size_t j = 0; j < m; ++j) {
    if (g <= 2 * static_cast<std::size_t>(p.max_degree_in(j)) + 1) {
      throw std::invalid_argument("grid_per_dim must exceed 2 * degree + 1 in every variable");
    }
  }
  const std::size_t d = p.space().dim;
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) total *= g;

  std::vector<cplx> roots(g);
  for (std::size_t k = 0; k < g; ++k) {
    roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(g));
  }

  // samples of f on the grid, layout [flat point index][d]
  std::vector<cplx> grid(total * d);
  {
    const MonomialEvaluator ev(p);
    parallel_for(total, [&](std::size_t lo, std::size_t hi) {
      auto ws = ev.workspace();
      std::vector<cplx> z(m);
      for (std::size_t idx = lo; idx < hi; ++idx) {
        std::size_t rem = idx;
        for (std::size_t j = 0; j < m; ++j) {
          z[j] = roots[rem % g];
          rem /= g;
        }
        auto v = ev.evaluate(z, ws);
        std::copy(v.begin(), v.end(), grid.begin() + static_cast<std::ptrdiff_t>(idx * d));
      }
    });
  }

  // Applies out[l] = sum_k w[(l - k) mod g] in[k] along coordinate j.
  auto apply_along = [&](std::size_t j, const std::vector<cplx>& w) {
    std::size_t stride = 1;
    for (std::size_t i = 0; i < j; ++i) stride *= g;
    const std::size_t lines = total / g;
    std::vector<cplx> next(grid.size());
    parallel_for(lines, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t line = lo; line < hi; ++line) {
        const std::size_t base = (line / stride) * stride * g + line % stride;
        for (std::size_t l = 0; l < g; ++l) {
          for (std::size_t c = 0; c < d; ++c) {
            cplx acc{};
            for (std::size_t k = 0; k < g; ++k) acc += w[(l + g - k) % g] * grid[(base + k * stride) * d + c];
            next[(base + l * stride) * d + c] = acc;
          }
        }
      }
    }, 1);
    grid.swap(next);
  };

  for (std::size_t j = 0; j < m; ++j) {
    // (1/G) K(omega_k, r z_l) depends only on l - k.
    std::vector<cplx> w(g);
    for (std::size_t s = 0; s < g; ++s) w[s] = kernel_1d(1.0, r[j] * roots[s]) / static_cast<double>(g);
    apply_along(j, w);
  }
  for (std::size_t j = 0; j < m; ++j) {
    // c_a = (1/G) sum_l F(z_l) z_l^{-a} along coordinate j.
    std::size_t stride = 1;
    for (std::size_t i = 0; i < j; ++i) stride *= g;
    const std::size_t lines = total / g;
    std::vector<cplx> next(grid.size());
    parallel_for(lines, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t line = lo; line < hi; ++line) {
        const std::size_t base = (line / stride) * stride * g + line % stride;
        for (std::size_t a = 0; a < g; ++a) {
          for (std::size_t c = 0; c < d; ++c) {
            cplx acc{};
            for (std::size_t l = 0; l < g; ++l) acc += std::conj(roots[(a * l) % g]) * grid[(base + l * stride) * d + c];
            next[(base + a * stride) * d + c] = acc / static_cast<double>(g);
          }
        }
      }
    }, 1);
    grid.swap(next);
  }

  // Frequencies a >= g/2 are the aliases of negative frequencies, which the
  // analytic data does not carry.
  double scale = 0;
  for (const auto& [alpha, c] : p) scale = std::max(scale, c.norm());
  const double floor = 1e-13 * std::max(scale, 1.0);
  PowerPoly out(p.space());
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint32_t> e(m);
    std::size_t rem = idx;
    bool analytic = true;
    for (std::size_t j = 0; j < m; ++j) {
      e[j] = static_cast<std::uint32_t>(rem % g);
      rem /= g;
      analytic = analytic && e[j] < g / 2;
    }
    if (!analytic) continue;
    CoeffVector v(p.space(), std::vector<cplx>(grid.begin() + static_cast<std::ptrdiff_t>(idx * d),
                                                grid.begin() + static_cast<std::ptrdiff_t>((idx + 1) * d)));
    if (v.norm() > floor) out.set(MultiIndex(std::move(e)), std::move(v));
  }
  return out;
}

struct ContractionResult {
  NormEstimate lhs;  ///< ||F_r||_p
  NormEstimate rhs;  ///< ||f||_p

  /// lhs <= rhs up to three combined standard errors.
  bool holds() const {
    const double se = std::sqrt(lhs.std_error * lhs.std_error + rhs.std_error * rhs.std_error);
    return lhs.value <= rhs.value + 3.0 * se + 1e-12 * std::max(1.0, rhs.value);
  }
};

/// Both sides of ||F_r||_{L_p(T^m)} <= ||f||_{L_p(T^m)}. At p = 2 with a
/// Euclidean norm both are exact; otherwise both share one Monte Carlo sample.
inline ContractionResult contraction_check(const PowerPoly& p, const RadiusVector& r, double exponent,
                                           const SamplerConfig& cfg) {
  detail::check_p(exponent);
  const PowerPoly conv = poisson_convolve_exact(p, r);
  if (exponent == 2.0 && p.space().euclidean()) return {norm_h2_exact(conv), norm_h2_exact(p)};
  return {norm_hp_mc(conv, exponent, cfg), norm_hp_mc(p, exponent, cfg)};
}

}  // namespace hardy
