#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "hardy/coeff.hpp"
#include "hardy/multi_index.hpp"

namespace hardy {

/// Finite map Key -> CoeffVector, all coefficients living in one space.
///
/// With Key = uint64_t this is a Dirichlet polynomial sum a_n n^{-s}; with
/// Key = MultiIndex it is a power polynomial sum c_alpha z^alpha on T^m.
/// Keys are kept ordered so that every traversal is deterministic.
template <class Key>
class SparseSeries {
 public:
  using key_type = Key;
  using map_type = std::map<Key, CoeffVector>;

  SparseSeries() : SparseSeries(CoeffSpaceSpec::scalar()) {}
  explicit SparseSeries(CoeffSpaceSpec space) : space_(space) {}

  /// Scalar series from (key, value) pairs.
  SparseSeries(std::initializer_list<std::pair<Key, cplx>> terms) : space_(CoeffSpaceSpec::scalar()) {
    for (const auto& [k, v] : terms) set(k, CoeffVector::scalar(v));
  }

  const CoeffSpaceSpec& space() const { return space_; }
  const map_type& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  const CoeffVector* find(const Key& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? nullptr : &it->second;
  }

  /// Coefficient at k, zero when absent.
  CoeffVector at(const Key& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? CoeffVector(space_) : it->second;
  }

  void set(const Key& k, CoeffVector v) {
    check_key(k);
    if (!(v.space() == space_)) throw std::invalid_argument("coefficient space does not match the series");
    coeffs_.insert_or_assign(k, std::move(v));
    note_key(k);
  }

  void set(const Key& k, cplx v) {
    if (space_.dim != 1) throw std::invalid_argument("scalar coefficient given for a vector-valued series");
    set(k, CoeffVector(space_, {v}));
  }

  void add(const Key& k, const CoeffVector& v) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      set(k, v);
    } else {
      it->second += v;
    }
  }

  void erase(const Key& k) {
    coeffs_.erase(k);
    recompute_extent();
  }

  /// Largest n with a stored coefficient (0 for the empty series).
  std::uint64_t max_index() const
    requires std::is_same_v<Key, std::uint64_t>
  {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
  }

  /// Smallest m such that every stored alpha lives on the first m primes.
  std::size_t width() const
    requires std::is_same_v<Key, MultiIndex>
  {
    return extent_;
  }

  /// Largest exponent of variable j over all stored indices.
  std::uint32_t max_degree_in(std::size_t j) const
    requires std::is_same_v<Key, MultiIndex>
  {
    std::uint32_t d = 0;
    for (const auto& [a, c] : coeffs_) d = std::max(d, a[j]);
    return d;
  }

  /// Sum of the coefficient norms, an upper bound for the sup norm.
  double coefficient_norm_sum() const {
    double s = 0;
    for (const auto& [k, c] : coeffs_) s += c.norm();
    return s;
  }

  SparseSeries& operator+=(const SparseSeries& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
  }
  SparseSeries& operator-=(const SparseSeries& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c * cplx(-1.0));
    return *this;
  }
  SparseSeries& operator*=(cplx s) {
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
  }
  friend SparseSeries operator+(SparseSeries a, const SparseSeries& b) { return a += b; }
  friend SparseSeries operator-(SparseSeries a, const SparseSeries& b) { return a -= b; }
  friend SparseSeries operator*(SparseSeries a, cplx s) { return a *= s; }
  friend SparseSeries operator*(cplx s, SparseSeries a) { return a *= s; }

  friend bool operator==(const SparseSeries& a, const SparseSeries& b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static void check_key(const Key& k) {
    if constexpr (std::is_same_v<Key, std::uint64_t>) {
      if (k == 0) throw std::invalid_argument("Dirichlet coefficients are indexed by n >= 1");
    }
  }

  void note_key(const Key& k) {
    if constexpr (std::is_same_v<Key, MultiIndex>) extent_ = std::max(extent_, k.size());
  }

  void recompute_extent() {
    if constexpr (std::is_same_v<Key, MultiIndex>) {
      extent_ = 0;
      for (const auto& [k, c] : coeffs_) extent_ = std::max(extent_, k.size());
    }
  }

  CoeffSpaceSpec space_;
  map_type coeffs_;
  std::size_t extent_ = 0;
};

using DirichletPoly = SparseSeries<std::uint64_t>;
using PowerPoly = SparseSeries<MultiIndex>;

namespace detail {
// max that lets NaN through
inline double nan_max(double a, double b) { return std::isnan(a) || std::isnan(b) ? std::nan("") : std::max(a, b); }
}  // namespace detail

/// max over the union of keys of ||a_k - b_k||; missing keys count as zero.
/// NaN when any coefficient is not finite.
template <class Key>
double max_coeff_gap(const SparseSeries<Key>& a, const SparseSeries<Key>& b) {
  if (!(a.space() == b.space())) throw std::invalid_argument("max_coeff_gap: coefficient spaces differ");
  double gap = 0;
  for (const auto& [k, c] : a) gap = detail::nan_max(gap, (c - b.at(k)).norm());
  for (const auto& [k, c] : b) {
    if (!a.find(k)) gap = detail::nan_max(gap, c.norm());
  }
  return gap;
}

/// Largest coefficient norm.
template <class Key>
double max_coeff_norm(const SparseSeries<Key>& a) {
  double m = 0;
  for (const auto& [k, c] : a) m = detail::nan_max(m, c.norm());
  return m;
}

}  // namespace hardy
