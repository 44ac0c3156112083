#pragma once

// Process-wide prime table backed by a lazily grown segmented sieve, plus
// factorization of 64-bit integers into prime exponent vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// Grow-only table of primes. Readers share the table; growth takes an
/// exclusive lock, so the table can be extended from any thread.
///
/// The sieve bound never exceeds `cap()`. Primes are stored as 32-bit values,
/// so the cap is clamped to 2^32 - 1.
class PrimeTable {
 public:
  static constexpr std::uint64_t kInitialLimit = 1u << 16;
  static constexpr std::uint64_t kDefaultCap = 1'000'000'000;
  static constexpr std::uint64_t kSegmentSize = 1u << 18;

  explicit PrimeTable(std::uint64_t cap = kDefaultCap)
      : cap_(std::clamp<std::uint64_t>(cap, kInitialLimit, std::numeric_limits<std::uint32_t>::max())) {
    std::vector<bool> composite(kInitialLimit + 1, false);
    for (std::uint64_t i = 2; i <= kInitialLimit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kInitialLimit; j += i) composite[j] = true;
    }
    limit_ = kInitialLimit;
  }

  PrimeTable(const PrimeTable&) = delete;
  PrimeTable& operator=(const PrimeTable&) = delete;

  std::uint64_t cap() const { return cap_; }

  std::uint64_t limit() const {
    std::shared_lock lock(mutex_);
    return limit_;
  }

  /// Makes sure every prime <= bound is present.
  void ensure(std::uint64_t bound) {
    {
      std::shared_lock lock(mutex_);
      if (bound <= limit_) return;
    }
    if (bound > cap_) {
      throw std::out_of_range("prime sieve bound " + std::to_string(bound) + " exceeds cap " +
                              std::to_string(cap_));
    }
    std::unique_lock lock(mutex_);
    if (bound <= limit_) return;
    extend_locked(std::min(cap_, std::max(bound, 2 * limit_)));
  }

  /// j-th prime, zero based (nth(0) == 2).
  std::uint64_t nth(std::size_t j) {
    for (;;) {
      {
        std::shared_lock lock(mutex_);
        if (j < primes_.size()) return primes_[j];
        if (limit_ >= cap_) throw std::out_of_range("prime index beyond sieve cap");
      }
      ensure(std::min(cap_, 2 * limit()));
    }
  }

  /// Number of primes <= x.
  std::size_t count_upto(std::uint64_t x) {
    ensure(x);
    std::shared_lock lock(mutex_);
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

  /// Zero-based position of the prime p in the ordered sequence of primes.
  std::size_t index_of_prime(std::uint64_t p) {
    ensure(p);
    std::shared_lock lock(mutex_);
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) throw std::invalid_argument(std::to_string(p) + " is not prime");
    return static_cast<std::size_t>(it - primes_.begin());
  }

  /// Factorizes n >= 1 into (prime index, exponent) pairs ordered by index.
  std::vector<std::pair<std::size_t, std::uint32_t>> factor_pairs(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: 0 has no prime factorization");
    std::vector<std::pair<std::size_t, std::uint32_t>> out;
    std::uint64_t rem = n;
    std::size_t next = 0;
    while (rem > 1) {
      bool exhausted = false;
      {
        std::shared_lock lock(mutex_);
        for (; next < primes_.size(); ++next) {
          const std::uint64_t p = primes_[next];
          if (p * p > rem) break;
          if (rem % p != 0) continue;
          std::uint32_t e = 0;
          do {
            rem /= p;
            ++e;
          } while (rem % p == 0);
          out.emplace_back(next, e);
        }
        exhausted = next == primes_.size();
      }
      if (rem == 1) break;
      if (!exhausted || detail::is_prime_u64(rem)) {
        out.emplace_back(index_of_prime(rem), 1);
        break;
      }
      // Composite cofactor whose smallest factor lies beyond the table.
      ensure(std::max(std::min(cap_, 2 * limit()), detail::isqrt(rem)));
    }
    return out;
  }

 private:
  void extend_locked(std::uint64_t hi) {
    // Base primes up to sqrt(hi) are always present: hi <= 2^32 and the
    // initial table covers 2^16.
    std::vector<char> seg;
    for (std::uint64_t lo = limit_ + 1; lo <= hi; lo += kSegmentSize) {
      const std::uint64_t top = std::min(hi, lo + kSegmentSize - 1);
      seg.assign(top - lo + 1, 1);
      for (std::uint32_t p : primes_) {
        const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > top) break;
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t k = start; k <= top; k += p) seg[k - lo] = 0;
      }
      for (std::uint64_t k = lo; k <= top; ++k) {
        if (seg[k - lo]) primes_.push_back(static_cast<std::uint32_t>(k));
      }
    }
    limit_ = hi;
  }

  std::uint64_t cap_;
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  mutable std::shared_mutex mutex_;
};

/// The shared table. Its cap comes from HARDY_SIEVE_LIMIT when set.
inline PrimeTable& prime_table() {
  static PrimeTable table([] {
    if (const char* env = std::getenv("HARDY_SIEVE_LIMIT")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return PrimeTable::kDefaultCap;
  }());
  return table;
}

/// j-th prime, zero based.
inline std::uint64_t nth_prime(std::size_t j) { return prime_table().nth(j); }

/// pi(x), the number of primes <= x.
inline std::size_t prime_count(std::uint64_t x) { return prime_table().count_upto(x); }

}  // namespace hardy
