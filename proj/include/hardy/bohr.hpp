#pragma once

// Bohr transform between Dirichlet polynomials and power polynomials on the
// polytorus, via n = p^alpha, together with the two coordinate projections
// (restriction to the first m variables, partial sums up to N).

#include <cstdint>

#include "hardy/multi_index.hpp"
#include "hardy/poly.hpp"

namespace hardy {

/// sum a_n n^{-s}  ->  sum a_{p^alpha} z^alpha.
inline PowerPoly bohr_lift(const DirichletPoly& d) {
  PowerPoly p(d.space());
  for (const auto& [n, a] : d) p.set(factorize(n), a);
  return p;
}

/// Inverse of bohr_lift. Throws std::out_of_range if some p^alpha leaves 64 bits.
inline DirichletPoly bohr_transform(const PowerPoly& p) {
  DirichletPoly d(p.space());
  for (const auto& [alpha, c] : p) d.set(index_of(alpha), c);
  return d;
}

/// Number of polytorus variables the lift of d depends on.
inline std::size_t lift_width(const DirichletPoly& d) {
  std::size_t w = 0;
  for (const auto& [n, a] : d) w = std::max(w, factorize(n).size());
  return w;
}

/// Averages out every variable beyond the m-th: keeps the coefficients whose
/// index lives on the first m primes.
inline PowerPoly restrict(const PowerPoly& p, std::size_t m) {
  PowerPoly out(p.space());
  for (const auto& [alpha, c] : p) {
    if (alpha.size() <= m) out.set(alpha, c);
  }
  return out;
}

/// S_N D = sum_{n <= N} a_n n^{-s}.
inline DirichletPoly partial_sum(const DirichletPoly& d, std::uint64_t n_max) {
  DirichletPoly out(d.space());
  for (const auto& [n, a] : d) {
    if (n > n_max) break;
    out.set(n, a);
  }
  return out;
}

}  // namespace hardy
