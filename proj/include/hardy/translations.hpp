#pragma once

// Vertical translations D_z, rotations D^theta by a point of the polytorus,
// and the H_p^+ norm sup_{eps > 0} ||D_eps||_{H_p} restricted to polynomials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/norms.hpp"

namespace hardy {

/// A point theta of the polytorus, one unimodular number per prime.
class TwistPoint {
 public:
  explicit TwistPoint(std::vector<cplx> angles) : angles_(std::move(angles)) {
    for (const auto& a : angles_) {
      if (std::abs(std::abs(a) - 1.0) > 1e-12) throw std::invalid_argument("twist coordinates must be unimodular");
    }
  }

  /// theta_j = exp(i phi_j).
  static TwistPoint from_phases(std::span<const double> phases) {
    std::vector<cplx> a;
    a.reserve(phases.size());
    for (double ph : phases) a.push_back(std::polar(1.0, ph));
    return TwistPoint(std::move(a));
  }

  std::size_t size() const { return angles_.size(); }
  std::span<const cplx> angles() const { return angles_; }

  TwistPoint conj() const {
    std::vector<cplx> a(angles_);
    for (auto& x : a) x = std::conj(x);
    return TwistPoint(std::move(a));
  }

 private:
  std::vector<cplx> angles_;
};

/// D_z: a_n -> a_n n^{-z}.
inline DirichletPoly translate(const DirichletPoly& d, cplx z) {
  DirichletPoly out(d.space());
  for (const auto& [n, a] : d) out.set(n, a * std::exp(-z * std::log(static_cast<double>(n))));
  return out;
}

/// D^theta: a_n -> a_n theta^alpha for n = p^alpha.
inline DirichletPoly twist(const DirichletPoly& d, const TwistPoint& theta) {
  DirichletPoly out(d.space());
  for (const auto& [n, a] : d) {
    const MultiIndex alpha = factorize(n);
    if (alpha.size() > theta.size()) {
      throw std::invalid_argument("twist point has " + std::to_string(theta.size()) + " coordinates, index " +
                                  std::to_string(n) + " needs " + std::to_string(alpha.size()));
    }
    cplx w = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      for (std::uint32_t k = 0; k < alpha[j]; ++k) w *= theta.angles()[j];
    }
    out.set(n, a * w);
  }
  return out;
}

struct EpsRow {
  double eps;
  NormEstimate estimate;
};

/// {2^{-k}}_{k=0..20}.
inline std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(std::ldexp(1.0, -k));
  return g;
}

/// ||D_eps||_{H_p} along a strictly decreasing grid of eps > 0.
///
/// At p = 2 with a Euclidean coefficient norm each row is the closed form
/// sqrt(sum ||a_n||^2 n^{-2 eps}). Otherwise every row uses the same
/// Monte Carlo sample (same seed), so differences between rows are not
/// swamped by independent sampling noise.
inline std::vector<EpsRow> eps_norm_profile(const DirichletPoly& d, double p, std::span<const double> eps_grid,
                                            const SamplerConfig& cfg) {
  detail::check_p(p);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0)) throw std::invalid_argument("eps grid entries must be positive");
    if (i && !(eps_grid[i] < eps_grid[i - 1])) throw std::invalid_argument("eps grid must be strictly decreasing");
  }
  const bool exact = p == 2.0 && d.space().euclidean();
  std::vector<EpsRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const DirichletPoly shifted = translate(d, eps);
    rows.push_back({eps, exact ? norm_h2_exact(shifted) : norm_hp_mc(shifted, p, cfg)});
  }
  return rows;
}

/// H_p^+ norm of a polynomial. For polynomials the sup over eps is the limit
/// eps -> 0, i.e. the plain H_p norm; this returns that value after checking
/// it against the profile at the smallest default eps.
///
/// On every sample point | ||D_eps|| - ||D|| | <= sum ||a_n|| (1 - n^{-eps}),
/// so the same bound holds between the two estimates when they share a
/// sample. Exceeding it throws EstimatorInconsistency.
inline NormEstimate hplus_norm(const DirichletPoly& d, double p, const SamplerConfig& cfg) {
  detail::check_p(p);
  const bool exact = p == 2.0 && d.space().euclidean();
  const NormEstimate plain = exact ? norm_h2_exact(d) : norm_hp_mc(d, p, cfg);
  const double eps = default_eps_grid().back();
  const std::vector<double> grid{eps};
  const NormEstimate shifted = eps_norm_profile(d, p, grid, cfg).front().estimate;
  double slack = 0;
  for (const auto& [n, a] : d) slack += a.norm() * -std::expm1(-eps * std::log(static_cast<double>(n)));
  const double tol = slack + 1e-12 * std::max(1.0, plain.value);
  if (std::abs(plain.value - shifted.value) > tol) {
    throw EstimatorInconsistency("H_p+ cross-check failed: |" + std::to_string(plain.value) + " - " +
                                 std::to_string(shifted.value) + "| exceeds " + std::to_string(tol));
  }
  return plain;
}

}  // namespace hardy
