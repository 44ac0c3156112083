#pragma once

// Hardy-space norm estimators for Dirichlet polynomials and their Bohr lifts.
//
// Two routes are provided for each norm: integration over the polytorus T^m
// (exactly at p = 2, Monte Carlo for other finite p, a lattice scan for
// p = infinity) and means along the vertical line, t -> sum a_n n^{-it}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/evaluator.hpp"
#include "hardy/parallel.hpp"
#include "hardy/poly.hpp"
#include "hardy/sampling.hpp"

namespace hardy {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class NormMethod { ExactParseval, TorusMc, TorusGridSup, VerticalMean, VerticalSup };

inline std::string_view to_string(NormMethod m) {
  switch (m) {
    case NormMethod::ExactParseval: return "EXACT_PARSEVAL";
    case NormMethod::TorusMc: return "TORUS_MC";
    case NormMethod::TorusGridSup: return "TORUS_GRID_SUP";
    case NormMethod::VerticalMean: return "VERTICAL_MEAN";
    case NormMethod::VerticalSup: return "VERTICAL_SUP";
  }
  return "?";
}

inline NormMethod parse_norm_method(std::string_view s) {
  for (auto m : {NormMethod::ExactParseval, NormMethod::TorusMc, NormMethod::TorusGridSup, NormMethod::VerticalMean,
                 NormMethod::VerticalSup}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown norm method '" + std::string(s) + "'");
}

struct NormEstimate {
  double value = 0;
  NormMethod method = NormMethod::ExactParseval;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  /// Half-width R of the vertical window for VERTICAL_* estimates, else 0.
  double horizon = 0;
};

/// Thrown when two estimators that must agree do not.
class EstimatorInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Hardy norm exponent p must satisfy p >= 1");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// p = 2 closed form

/// sqrt(sum ||a||^2). Monomials are orthonormal on the polytorus, so this is
/// the exact H_2 norm whenever the coefficient norm is Euclidean.
template <class Key>
NormEstimate norm_h2_exact(const SparseSeries<Key>& s) {
  if (!s.space().euclidean()) {
    throw std::invalid_argument(
        "no closed-form H_2 norm for a non-Euclidean coefficient norm; use the Monte Carlo estimator (norm_hp_mc)");
  }
  std::vector<double> sq;
  sq.reserve(s.size());
  for (const auto& [k, c] : s) sq.push_back(std::pow(c.norm(), 2));
  return {std::sqrt(pairwise_sum(sq)), NormMethod::ExactParseval, 0.0, 0, 0};
}

// ---------------------------------------------------------------------------
// Monte Carlo on T^m

/// ||P(omega_k)|| for k = 0..samples-1 under the configured scheme.
inline std::vector<double> torus_sample_norms(const PowerPoly& p, const SamplerConfig& cfg) {
  cfg.validate();
  const MonomialEvaluator ev(p);
  const TorusSampler sampler(cfg, p.width());
  std::vector<double> out(cfg.samples);
  parallel_for(cfg.samples, [&](std::size_t lo, std::size_t hi) {
    auto ws = ev.workspace();
    std::vector<cplx> z(p.width());
    for (std::size_t k = lo; k < hi; ++k) {
      sampler.point(k, z);
      out[k] = ev.norm_at(z, ws);
    }
  });
  return out;
}

/// (mean of v^p)^{1/p} over a fixed sample with a delta-method standard error.
inline NormEstimate power_mean_estimate(std::span<const double> values, double p, const SamplerConfig& cfg) {
  detail::check_p(p);
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("Monte Carlo estimate needs at least two samples");
  std::vector<double> pw(n);
  for (std::size_t k = 0; k < n; ++k) pw[k] = std::pow(values[k], p);
  const double mean = pairwise_sum(pw) / static_cast<double>(n);
  for (auto& x : pw) x = (x - mean) * (x - mean);
  const double var = pairwise_sum(pw) / static_cast<double>(n - 1);
  const double se_mean = std::sqrt(var / static_cast<double>(n));
  const double value = std::pow(mean, 1.0 / p);
  const double se = value > 0 ? se_mean * std::pow(value, 1.0 - p) / p : se_mean;
  return {value, NormMethod::TorusMc, se, n, cfg.seed};
}

namespace detail {
// A single monomial has constant norm on the torus: ||c z^alpha|| = ||c||.
inline bool constant_on_torus(const PowerPoly& p) { return p.size() <= 1; }

inline NormEstimate constant_norm(const PowerPoly& p) {
  const double v = p.empty() ? 0.0 : p.begin()->second.norm();
  return {v, NormMethod::ExactParseval, 0.0, 0, 0};
}
}  // namespace detail

/// Bochner L_p norm of P over T^m estimated from cfg.samples points.
/// Polynomials with at most one term are detected and answered exactly.
inline NormEstimate norm_hp_mc(const PowerPoly& p, double exponent, const SamplerConfig& cfg) {
  detail::check_p(exponent);
  cfg.validate();
  if (detail::constant_on_torus(p)) return detail::constant_norm(p);
  const auto values = torus_sample_norms(p, cfg);
  return power_mean_estimate(values, exponent, cfg);
}

inline NormEstimate norm_hp_mc(const DirichletPoly& d, double exponent, const SamplerConfig& cfg) {
  return norm_hp_mc(bohr_lift(d), exponent, cfg);
}

// ---------------------------------------------------------------------------
// Sup norm by lattice scan

inline constexpr std::size_t kDefaultGridWidthCap = 8;

/// max of ||P|| over the lattice {exp(2 pi i k / G)}^m. This is a lower bound
/// for the sup norm; refining G to any multiple of G can only raise it.
inline NormEstimate norm_hinf_grid(const PowerPoly& p, std::size_t grid_per_dim,
                                   std::size_t width_cap = kDefaultGridWidthCap) {
  if (grid_per_dim < 1) throw std::invalid_argument("grid_per_dim must be >= 1");
  const std::size_t m = p.width();
  if (m > width_cap) {
    throw std::invalid_argument("sup-norm grid scan over " + std::to_string(m) + " variables exceeds the cap of " +
                                std::to_string(width_cap));
  }
  if (detail::constant_on_torus(p)) {
    auto e = detail::constant_norm(p);
    e.method = NormMethod::TorusGridSup;
    e.samples = 1;
    return e;
  }
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    if (__builtin_mul_overflow(total, grid_per_dim, &total)) throw std::invalid_argument("grid too large");
  }
  std::vector<cplx> roots(grid_per_dim);
  for (std::size_t k = 0; k < grid_per_dim; ++k) {
    roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_per_dim));
  }
  const MonomialEvaluator ev(p);
  const std::size_t chunks = std::min<std::uint64_t>(total, 1024);
  std::vector<double> chunk_max(chunks, 0.0);
  parallel_for(
      chunks,
      [&](std::size_t lo, std::size_t hi) {
        auto ws = ev.workspace();
        std::vector<cplx> z(m);
        for (std::size_t c = lo; c < hi; ++c) {
          const std::uint64_t begin = total * c / chunks;
          const std::uint64_t end = total * (c + 1) / chunks;
          double best = 0;
          for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t r = idx;
            for (std::size_t j = 0; j < m; ++j) {
              z[j] = roots[r % grid_per_dim];
              r /= grid_per_dim;
            }
            best = std::max(best, ev.norm_at(z, ws));
          }
          chunk_max[c] = best;
        }
      },
      1);
  return {*std::max_element(chunk_max.begin(), chunk_max.end()), NormMethod::TorusGridSup, 0.0, total, 0};
}

inline NormEstimate norm_hinf_grid(const DirichletPoly& d, std::size_t grid_per_dim,
                                   std::size_t width_cap = kDefaultGridWidthCap) {
  return norm_hinf_grid(bohr_lift(d), grid_per_dim, width_cap);
}

// ---------------------------------------------------------------------------
// Vertical line

namespace detail {

/// ||D(it_k)|| on the uniform nodes t_k = R (2k - (T-1)) / (T-1), k < T.
/// With T odd the middle node is exactly t = 0.
inline std::vector<double> vertical_norms(const DirichletPoly& d, double horizon, std::size_t t_samples) {
  if (!(horizon > 0)) throw std::invalid_argument("vertical window half-width R must be positive");
  if (t_samples < 2) throw std::invalid_argument("vertical quadrature needs at least two nodes");
  const PowerPoly lift = bohr_lift(d);
  const MonomialEvaluator ev(lift);
  std::vector<double> logp(lift.width());
  for (std::size_t j = 0; j < logp.size(); ++j) logp[j] = std::log(static_cast<double>(nth_prime(j)));
  std::vector<double> out(t_samples);
  const double denom = static_cast<double>(t_samples - 1);
  parallel_for(t_samples, [&](std::size_t lo, std::size_t hi) {
    auto ws = ev.workspace();
    std::vector<cplx> z(logp.size());
    for (std::size_t k = lo; k < hi; ++k) {
      const double t = horizon * (2.0 * static_cast<double>(k) - denom) / denom;
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = std::polar(1.0, -t * logp[j]);
      out[k] = ev.norm_at(z, ws);
    }
  });
  return out;
}

}  // namespace detail

/// ((1/2R) int_{-R}^{R} ||D(it)||^p dt)^{1/p} by the trapezoid rule on
/// t_samples uniform nodes. Converges to the H_p norm as R grows.
inline NormEstimate vertical_mean(const DirichletPoly& d, double p, double horizon, std::size_t t_samples) {
  detail::check_p(p);
  auto f = detail::vertical_norms(d, horizon, t_samples);
  for (auto& x : f) x = std::pow(x, p);
  f.front() *= 0.5;
  f.back() *= 0.5;
  // h * sum / (2R) with h = 2R / (T-1)
  const double mean = pairwise_sum(f) / static_cast<double>(t_samples - 1);
  return {std::pow(mean, 1.0 / p), NormMethod::VerticalMean, 0.0, t_samples, 0, horizon};
}

/// max over the nodes of ||D(it)||, a lower bound for the H_infinity norm.
inline NormEstimate vertical_sup(const DirichletPoly& d, double horizon, std::size_t t_samples) {
  const auto f = detail::vertical_norms(d, horizon, t_samples);
  return {*std::max_element(f.begin(), f.end()), NormMethod::VerticalSup, 0.0, t_samples, 0, horizon};
}

/// vertical_mean at R, 2R, 4R with the node density held fixed. There is no
/// stopping rule; the caller judges convergence from the three values.
inline std::vector<NormEstimate> vertical_mean_diagnostic(const DirichletPoly& d, double p, double horizon,
                                                          double nodes_per_unit) {
  if (!(nodes_per_unit > 0)) throw std::invalid_argument("nodes_per_unit must be positive");
  std::vector<NormEstimate> out;
  for (double r : {horizon, 2 * horizon, 4 * horizon}) {
    const auto nodes = static_cast<std::size_t>(std::ceil(2 * r * nodes_per_unit)) + 1;
    out.push_back(vertical_mean(d, p, r, std::max<std::size_t>(nodes, 2)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// p -> infinity

struct PLimitRow {
  double p;
  NormEstimate estimate;
};

/// Power means along p_grid evaluated on one shared sample, so the rows are
/// non-decreasing in p (Jensen on the empirical measure).
inline std::vector<PLimitRow> norm_p_limit_check(const DirichletPoly& d, std::span<const double> p_grid,
                                                 const SamplerConfig& cfg) {
  if (p_grid.empty()) throw std::invalid_argument("p grid must be non-empty");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    detail::check_p(p_grid[i]);
    if (i && !(p_grid[i] > p_grid[i - 1])) throw std::invalid_argument("p grid must be increasing");
  }
  const PowerPoly lift = bohr_lift(d);
  std::vector<PLimitRow> rows;
  if (detail::constant_on_torus(lift)) {
    for (double p : p_grid) rows.push_back({p, detail::constant_norm(lift)});
    return rows;
  }
  const auto values = torus_sample_norms(lift, cfg);
  for (double p : p_grid) rows.push_back({p, power_mean_estimate(values, p, cfg)});
  return rows;
}

// ---------------------------------------------------------------------------

/// Norm by the most accurate available route: the closed form at p = 2 with a
/// Euclidean coefficient norm, the lattice scan at p = infinity, Monte Carlo
/// otherwise.
inline NormEstimate norm_auto(const PowerPoly& p, double exponent, const SamplerConfig& cfg,
                              std::size_t grid_per_dim = 32) {
  if (std::isinf(exponent)) return norm_hinf_grid(p, grid_per_dim);
  detail::check_p(exponent);
  if (exponent == 2.0 && p.space().euclidean()) return norm_h2_exact(p);
  return norm_hp_mc(p, exponent, cfg);
}

inline NormEstimate norm_auto(const DirichletPoly& d, double exponent, const SamplerConfig& cfg,
                              std::size_t grid_per_dim = 32) {
  return norm_auto(bohr_lift(d), exponent, cfg, grid_per_dim);
}

}  // namespace hardy
