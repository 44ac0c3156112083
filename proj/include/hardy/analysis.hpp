#pragma once

// Finite checks of the half-plane and polydisc estimates: Cayley transform,
// the Stolz-angle ratio along horizontal rays, the Schwarz bound, the H_2
// point-evaluation bound with its reproducing kernel, Khintchine-type linear
// polynomials, and the Hilbert criterion sup_m ||f_m|| < infinity.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/evaluator.hpp"
#include "hardy/norms.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Cayley transform D -> C_0

/// phi(z) = (1 + z) / (1 - z), |z| < 1.
inline cplx cayley(cplx z) {
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("cayley: |z| must be < 1");
  return (1.0 + z) / (1.0 - z);
}

/// phi^{-1}(s) = (s - 1) / (s + 1), Re s > 0.
inline cplx cayley_inv(cplx s) {
  if (!(s.real() > 0)) throw std::invalid_argument("cayley_inv: Re s must be > 0");
  return (s - 1.0) / (s + 1.0);
}

struct StolzRatio {
  double lhs;  ///< |phi^{-1}(eps+it) - phi^{-1}(it)| / (1 - |phi^{-1}(eps+it)|)
  double rhs;  ///< (sqrt((1+eps)^2+t^2) + sqrt((1-eps)^2+t^2)) / (2 sqrt(1+t^2))
};

/// The ray eps -> phi^{-1}(eps + it) approaches the boundary point
/// phi^{-1}(it) inside a Stolz angle; lhs is measured from the two points,
/// rhs is the closed form.
inline StolzRatio stolz_ratio(double eps, double t) {
  if (!(eps > 0)) throw std::invalid_argument("stolz_ratio: eps must be > 0");
  const cplx s(eps, t);
  const cplx it(0, t);
  const cplx w = cayley_inv(s);
  // w - phi^{-1}(it) = 2 eps / ((s + 1)(it + 1))
  const double dist = std::abs(2.0 * eps / ((s + 1.0) * (it + 1.0)));
  // 1 - |w| = (1 - |w|^2) / (1 + |w|) and 1 - |w|^2 = 4 Re s / |s + 1|^2
  const double one_minus = 4.0 * eps / std::norm(s + 1.0) / (1.0 + std::abs(w));
  const double lhs = dist / one_minus;
  const double rhs = (std::hypot(1.0 + eps, t) + std::hypot(1.0 - eps, t)) / (2.0 * std::hypot(1.0, t));
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Polydisc inequalities

struct BoundCheck {
  double value;
  double bound;
  bool holds() const { return value <= bound * (1.0 + 1e-12) + 1e-15; }
};

namespace detail {
inline void check_polydisc(std::span<const cplx> z, std::size_t width) {
  if (z.size() < width) throw std::invalid_argument("point has fewer coordinates than the polynomial width");
  for (const auto& x : z) {
    if (!(std::abs(x) < 1.0)) throw std::invalid_argument("point must lie in the open polydisc");
  }
}
}  // namespace detail

/// ||P(z)|| against max_j |z_j|. Valid when P(0) = 0 and ||P||_infinity <= 1.
inline BoundCheck schwarz_bound_check(const PowerPoly& p, std::span<const cplx> z) {
  if (const CoeffVector* c0 = p.find(MultiIndex{}); c0 && !c0->is_zero()) {
    throw std::invalid_argument("schwarz bound needs a zero constant term");
  }
  detail::check_polydisc(z, p.width());
  double bound = 0;
  for (const auto& x : z) bound = std::max(bound, std::abs(x));
  return {evaluate(p, z).norm(), bound};
}

struct SchwarzTrial {
  BoundCheck check;
  double sup_estimate;    ///< grid lower bound used for normalization
  std::size_t grid_used;  ///< final grid_per_dim
};

/// Normalizes P by its grid sup norm inflated by (1 + delta) and checks the
/// Schwarz bound. The grid scan is only a lower bound, so a failure is
/// retried on a doubled grid (up to max_grid) before being reported.
inline SchwarzTrial schwarz_trial(const PowerPoly& p, std::span<const cplx> z, std::size_t grid_per_dim = 32,
                                  double delta = 0.01, std::size_t max_grid = 256) {
  std::size_t g = grid_per_dim;
  for (;;) {
    const double sup = norm_hinf_grid(p, g).value;
    if (!(sup > 0)) return {schwarz_bound_check(p, z), sup, g};
    const PowerPoly q = p * cplx(1.0 / (sup * (1.0 + delta)));
    const BoundCheck c = schwarz_bound_check(q, z);
    if (c.holds() || 2 * g > max_grid) return {c, sup, g};
    g *= 2;
  }
}

/// ||P(z)|| against ||P||_{H_2} prod_j (1 - |z_j|^2)^{-1/2}.
inline BoundCheck pointwise_eval_bound_h2(const PowerPoly& p, std::span<const cplx> z) {
  if (!p.space().euclidean()) throw std::invalid_argument("pointwise H_2 bound needs a Euclidean coefficient norm");
  detail::check_polydisc(z, p.width());
  double factor = 1.0;
  for (const auto& x : z) factor /= std::sqrt(1.0 - std::norm(x));
  return {evaluate(p, z).norm(), norm_h2_exact(p).value * factor};
}

/// prod_j sum_{k<=degree} (conj(z_j) w_j)^k, the reproducing kernel of H_2 at z
/// truncated per coordinate. It attains the point-evaluation bound at z up to
/// a factor prod_j (1 - |z_j|^{2(degree+1)})^{1/2}.
inline PowerPoly reproducing_kernel(std::span<const cplx> z, std::uint32_t degree) {
  const std::size_t m = z.size();
  PowerPoly out;
  std::vector<std::uint32_t> e(m, 0);
  for (;;) {
    cplx c = 1.0;
    for (std::size_t j = 0; j < m; ++j) c *= std::pow(std::conj(z[j]), static_cast<int>(e[j]));
    out.set(MultiIndex(e), c);
    std::size_t j = 0;
    while (j < m && e[j] == degree) e[j++] = 0;
    if (j == m) break;
    ++e[j];
  }
  return out;
}

struct LinearPoly {
  PowerPoly poly;
  double h2_norm;
};

/// Q_m(z) = sum_{k<=m} xi_k z_k and its exact H_2 norm (sum |xi_k|^2)^{1/2}.
inline LinearPoly khintchine_linear(std::span<const cplx> xi, std::size_t m) {
  if (m > xi.size()) throw std::invalid_argument("khintchine_linear: m exceeds the length of xi");
  PowerPoly q;
  for (std::size_t k = 0; k < m; ++k) q.set(MultiIndex::unit(k), xi[k]);
  return {q, norm_h2_exact(q).value};
}

// ---------------------------------------------------------------------------
// Hilbert criterion

/// A rule alpha -> c_alpha over all multi-indices. Absent coefficients are
/// reported as std::nullopt.
struct CoeffFamily {
  std::string label;
  CoeffSpaceSpec space;
  std::function<std::optional<CoeffVector>(const MultiIndex&)> generator;
};

enum class CriterionVerdict { BoundedSoFar, DivergentTrend };

inline std::string_view to_string(CriterionVerdict v) {
  return v == CriterionVerdict::BoundedSoFar ? "BOUNDED_SO_FAR" : "DIVERGENT_TREND";
}

struct CriterionRow {
  std::size_t m;
  NormEstimate estimate;
};

struct CriterionReport {
  std::string label;
  double p = 2;
  std::vector<CriterionRow> per_m;
  CriterionVerdict verdict = CriterionVerdict::BoundedSoFar;
  double sup_value = 0;
};

struct CriterionOptions {
  std::uint32_t degree_cap = 12;  ///< total degree kept when materializing
  double tolerance = 1e-3;        ///< relative increment counted as stalled
  std::size_t window = 3;         ///< number of trailing increments inspected
  std::size_t grid_per_dim = 16;  ///< lattice for p = infinity
};

/// All coefficients of the family with support in the first m variables and
/// total degree <= degree_cap.
inline PowerPoly materialize(const CoeffFamily& family, std::size_t m, std::uint32_t degree_cap) {
  PowerPoly out(family.space);
  std::vector<std::uint32_t> e(m, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t j, std::uint32_t left) {
    if (j == m) {
      const MultiIndex alpha(e);
      if (auto c = family.generator(alpha); c && !c->is_zero()) out.set(alpha, std::move(*c));
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[j] = k;
      rec(j + 1, left - k);
    }
    e[j] = 0;
  };
  rec(0, degree_cap);
  return out;
}

/// Estimates ||f_m||_{H_p} for m = 1..m_max, where f_m is the family
/// restricted to the first m variables, and classifies the trend.
///
/// The verdict is BOUNDED_SO_FAR when each of the last `window` increments is
/// at most tolerance * (last value), DIVERGENT_TREND otherwise. It is a
/// heuristic: boundedness of the full sequence is not finitely decidable.
///
/// The true sequence is non-decreasing (f_m averages f_{m+1} over z_{m+1}).
/// For the lattice scan, a lower bound, the running maximum is reported,
/// which is still a lower bound for each ||f_m||.
inline CriterionReport hilbert_criterion(const CoeffFamily& family, double p, std::size_t m_max,
                                         const SamplerConfig& cfg, const CriterionOptions& opt = {}) {
  if (m_max < 1) throw std::invalid_argument("hilbert criterion needs m_max >= 1");
  const bool sup = std::isinf(p);
  if (!sup) detail::check_p(p);
  const PowerPoly full = materialize(family, m_max, opt.degree_cap);

  CriterionReport rep;
  rep.label = family.label;
  rep.p = p;
  rep.per_m.resize(m_max);
  for (std::size_t m = 1; m <= m_max; ++m) {
    const PowerPoly fm = restrict(full, m);
    NormEstimate e = sup ? norm_hinf_grid(fm, opt.grid_per_dim)
                         : (p == 2.0 && fm.space().euclidean() ? norm_h2_exact(fm) : norm_hp_mc(fm, p, cfg));
    if (sup && m > 1) e.value = std::max(e.value, rep.per_m[m - 2].estimate.value);
    rep.per_m[m - 1] = {m, e};
  }
  for (const auto& r : rep.per_m) rep.sup_value = std::max(rep.sup_value, r.estimate.value);

  const double last = rep.per_m.back().estimate.value;
  const std::size_t incs = std::min(opt.window, m_max - 1);
  bool stalled = true;
  for (std::size_t i = 0; i < incs; ++i) {
    const std::size_t hi = m_max - 1 - i;
    const double inc = rep.per_m[hi].estimate.value - rep.per_m[hi - 1].estimate.value;
    if (inc > opt.tolerance * std::max(last, 1e-300)) stalled = false;
  }
  rep.verdict = stalled ? CriterionVerdict::BoundedSoFar : CriterionVerdict::DivergentTrend;
  return rep;
}

/// c_alpha = 1 at alpha = e_k for k < count (zero based), 0 elsewhere.
inline CoeffFamily family_first_linear(std::size_t count) {
  return {"first_linear_" + std::to_string(count), CoeffSpaceSpec::scalar(),
          [count](const MultiIndex& a) -> std::optional<CoeffVector> {
            if (a.degree() == 1 && a.size() <= count) return CoeffVector::scalar(1.0);
            return std::nullopt;
          }};
}

/// c_alpha = 1 at every alpha = e_k.
inline CoeffFamily family_all_linear() {
  return {"all_linear", CoeffSpaceSpec::scalar(), [](const MultiIndex& a) -> std::optional<CoeffVector> {
            if (a.degree() == 1) return CoeffVector::scalar(1.0);
            return std::nullopt;
          }};
}

/// c_alpha = e_n in (C^d, l_infinity) at alpha = factorize(n), n <= d.
inline CoeffFamily family_c0(std::size_t d) {
  const CoeffSpaceSpec space(d, NormKind::LInf);
  return {"c0_" + std::to_string(d), space, [space, d](const MultiIndex& a) -> std::optional<CoeffVector> {
            std::uint64_t n = 0;
            try {
              n = index_of(a);
            } catch (const std::out_of_range&) {
              return std::nullopt;
            }
            if (n > d) return std::nullopt;
            return CoeffVector::unit(space, n - 1);
          }};
}

}  // namespace hardy
