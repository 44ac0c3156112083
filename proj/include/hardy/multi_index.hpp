#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/primes.hpp"

namespace hardy {

/// Finitely supported exponent vector over the primes: alpha_j is the
/// exponent of the j-th prime. Stored without trailing zeros, so two equal
/// indices always compare equal as map keys.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::uint32_t> exps) : exps_(exps) { trim(); }
  explicit MultiIndex(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

  /// Unit vector e_j (zero based).
  static MultiIndex unit(std::size_t j) {
    std::vector<std::uint32_t> e(j + 1, 0);
    e[j] = 1;
    return MultiIndex(std::move(e));
  }

  /// Length of the stored support: every nonzero entry sits below this.
  std::size_t size() const { return exps_.size(); }
  bool empty() const { return exps_.empty(); }

  std::uint32_t operator[](std::size_t j) const { return j < exps_.size() ? exps_[j] : 0; }
  std::span<const std::uint32_t> exponents() const { return exps_; }

  /// |alpha|, the total degree.
  std::uint64_t degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }

  /// Number of nonzero entries.
  std::size_t support_count() const {
    std::size_t c = 0;
    for (auto e : exps_) c += e != 0;
    return c;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    std::vector<std::uint32_t> e(std::max(size(), o.size()), 0);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = (*this)[j] + o[j];
    return MultiIndex(std::move(e));
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.exps_ <=> b.exps_; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(exps_[j]);
    }
    return s + ")";
  }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  std::vector<std::uint32_t> exps_;
};

/// The exponent vector alpha with p^alpha = n.
inline MultiIndex factorize(std::uint64_t n) {
  auto pairs = prime_table().factor_pairs(n);
  if (pairs.empty()) return {};
  std::vector<std::uint32_t> e(pairs.back().first + 1, 0);
  for (auto [j, k] : pairs) e[j] = k;
  return MultiIndex(std::move(e));
}

/// n = p^alpha. Throws std::out_of_range when the product leaves 64 bits.
inline std::uint64_t index_of(const MultiIndex& alpha) {
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    const std::uint64_t p = nth_prime(j);
    for (std::uint32_t k = 0; k < alpha[j]; ++k) {
      if (__builtin_mul_overflow(n, p, &n)) {
        throw std::out_of_range("index_of: p^alpha overflows 64 bits for alpha = " + alpha.to_string());
      }
    }
  }
  return n;
}

}  // namespace hardy
