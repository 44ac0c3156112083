#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/norms.hpp"

namespace hardy {

struct AbelCheck {
  DirichletPoly lhs;
  DirichletPoly rhs;
  double max_coeff_gap = 0;  ///< absolute
  double relative_gap = 0;   ///< max_coeff_gap / max(1, max ||a_n||)
};

/// Both sides of summation by parts for 1 < N < M:
///
///   sum_{n=N}^{M} a_n n^{-eps-s}
///     = sum_{n=N}^{M-1} S_n (n^{-eps} - (n+1)^{-eps}) + S_M M^{-eps} - S_{N-1} N^{-eps}
///
/// where S_n = sum_{k<=n} a_k k^{-s}. Both sides are built as Dirichlet
/// polynomials and compared coefficientwise.
inline AbelCheck abel_identity_check(const DirichletPoly& d, std::uint64_t n_lo, std::uint64_t n_hi, double eps) {
  if (!(1 < n_lo && n_lo < n_hi)) throw std::invalid_argument("abel check needs 1 < N < M");
  if (n_hi > d.max_index()) {
    throw std::invalid_argument("abel check needs M <= max index " + std::to_string(d.max_index()));
  }
  if (!(eps > 0)) throw std::invalid_argument("abel check needs eps > 0");
  auto w = [eps](std::uint64_t n) { return std::pow(static_cast<double>(n), -eps); };

  DirichletPoly lhs(d.space());
  for (const auto& [n, a] : d) {
    if (n >= n_lo && n <= n_hi) lhs.set(n, a * w(n));
  }

  DirichletPoly rhs(d.space());
  DirichletPoly running(d.space());  // S_n
  auto extend_to = [&](std::uint64_t n) {
    if (const CoeffVector* a = d.find(n)) running.set(n, *a);
  };
  for (std::uint64_t n = 1; n < n_lo; ++n) extend_to(n);
  rhs -= running * cplx(w(n_lo));
  for (std::uint64_t n = n_lo; n < n_hi; ++n) {
    extend_to(n);
    rhs += running * cplx(w(n) - w(n + 1));
  }
  extend_to(n_hi);
  rhs += running * cplx(w(n_hi));

  AbelCheck out{std::move(lhs), std::move(rhs), 0, 0};
  out.max_coeff_gap = max_coeff_gap(out.lhs, out.rhs);
  out.relative_gap = out.max_coeff_gap / std::max(1.0, max_coeff_norm(partial_sum(d, n_hi)));
  return out;
}

/// S_N o S_N = S_N and ||S_N D||_{H_2} <= ||D||_{H_2}.
inline bool partial_sum_projection_check(const DirichletPoly& d, std::uint64_t n) {
  const DirichletPoly s = partial_sum(d, n);
  if (!(partial_sum(s, n) == s)) return false;
  if (n >= d.max_index() && !(s == d)) return false;
  if (!d.space().euclidean()) return true;
  return norm_h2_exact(s).value <= norm_h2_exact(d).value;
}

struct LogBoundRow {
  std::uint64_t n = 0;
  double ratio = 0;           ///< ||S_N D|| / ||D||
  double ratio_over_log = 0;  ///< ratio / log N
  double p = 0;
  NormMethod method = NormMethod::ExactParseval;
  double std_error = 0;  ///< of ratio, by the delta method
};

struct LogBoundOptions {
  /// p = infinity: vertical_sup with R = horizon_per_index * N.
  double horizon_per_index = 100.0;
  std::size_t t_samples = 20001;
};

/// Ratios ||S_N D|| / ||D|| along Ns for D = family(max Ns). The norm is
/// exact at p = 2 (Euclidean), vertical_sup at p = infinity, Monte Carlo on
/// a shared sample otherwise. Rows come back in the order of Ns.
inline std::vector<LogBoundRow> log_bound_experiment(const std::function<DirichletPoly(std::uint64_t)>& family,
                                                     double p, std::span<const std::uint64_t> ns,
                                                     const SamplerConfig& cfg, const LogBoundOptions& opt = {}) {
  if (ns.empty()) throw std::invalid_argument("log-bound sweep needs at least one N");
  std::uint64_t n_max = 0;
  for (auto n : ns) {
    if (n < 2) throw std::invalid_argument("log-bound sweep needs N >= 2");
    n_max = std::max(n_max, n);
  }
  const DirichletPoly d = family(n_max);
  const bool sup = std::isinf(p);
  if (!sup) detail::check_p(p);
  const bool exact = p == 2.0 && d.space().euclidean();

  auto measure = [&](const DirichletPoly& x, std::uint64_t n) {
    if (sup) return vertical_sup(x, opt.horizon_per_index * static_cast<double>(n), opt.t_samples);
    if (exact) return norm_h2_exact(x);
    return norm_hp_mc(x, p, cfg);
  };

  const NormEstimate full = measure(d, std::max(n_max, d.max_index()));
  if (!(full.value > 0)) throw std::invalid_argument("log-bound sweep needs a nonzero series");
  std::vector<LogBoundRow> rows(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::uint64_t n = ns[i];
    const NormEstimate part = measure(partial_sum(d, n), n);
    LogBoundRow& row = rows[i];
    row.n = n;
    row.ratio = part.value / full.value;
    row.ratio_over_log = row.ratio / std::log(static_cast<double>(n));
    row.p = p;
    row.method = part.method;
    const double rel_a = part.value > 0 ? part.std_error / part.value : 0.0;
    const double rel_b = full.std_error / full.value;
    row.std_error = row.ratio * std::sqrt(rel_a * rel_a + rel_b * rel_b);
  }
  return rows;
}

/// max of ratio_over_log over rows with N > N_last / 2, divided by the
/// overall max. Values <= 1.1 indicate a stabilised log-growth constant.
inline double final_octave_ratio(std::span<const LogBoundRow> rows) {
  if (rows.empty()) return 0;
  std::uint64_t n_last = 0;
  double overall = 0;
  for (const auto& r : rows) {
    n_last = std::max(n_last, r.n);
    overall = std::max(overall, r.ratio_over_log);
  }
  double tail = 0;
  for (const auto& r : rows) {
    if (2 * r.n > n_last) tail = std::max(tail, r.ratio_over_log);
  }
  return overall > 0 ? tail / overall : 0;
}

}  // namespace hardy
