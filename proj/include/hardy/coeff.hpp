#pragma once

// Finite-dimensional stand-in for the coefficient Banach space: C^d with an
// l1, l2 or l-infinity norm.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

using cplx = std::complex<double>;

enum class NormKind { L1, L2, LInf };

inline std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LInf: return "linf";
  }
  return "?";
}

inline NormKind parse_norm_kind(std::string_view s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::LInf;
  throw std::invalid_argument("unknown coefficient norm '" + std::string(s) + "' (expected l1, l2 or linf)");
}

struct CoeffSpaceSpec {
  std::size_t dim = 1;
  NormKind norm = NormKind::L2;

  CoeffSpaceSpec() = default;
  CoeffSpaceSpec(std::size_t d, NormKind k) : dim(d), norm(k) {
    if (d == 0) throw std::invalid_argument("coefficient space dimension must be >= 1");
  }

  static CoeffSpaceSpec scalar() { return {1, NormKind::L2}; }

  /// Parseval-type identities need a Hilbert norm; in dimension one every
  /// tag is the modulus.
  bool euclidean() const { return norm == NormKind::L2 || dim == 1; }

  friend bool operator==(const CoeffSpaceSpec&, const CoeffSpaceSpec&) = default;
};

/// Norm of a raw coefficient buffer under the given tag.
inline double norm_of(std::span<const cplx> v, NormKind k) {
  switch (k) {
    case NormKind::L1: {
      double s = 0;
      for (const auto& x : v) s += std::abs(x);
      return s;
    }
    case NormKind::L2: {
      if (v.size() == 1) return std::abs(v[0]);
      double s = 0;
      for (const auto& x : v) s += std::norm(x);
      return std::sqrt(s);
    }
    case NormKind::LInf: {
      double m = 0;
      for (const auto& x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0;
}

class CoeffVector {
 public:
  explicit CoeffVector(CoeffSpaceSpec space) : entries_(space.dim, cplx{}), space_(space) {}
  CoeffVector(CoeffSpaceSpec space, std::vector<cplx> entries) : entries_(std::move(entries)), space_(space) {
    if (entries_.size() != space_.dim) {
      throw std::invalid_argument("coefficient has " + std::to_string(entries_.size()) +
                                  " entries, space dimension is " + std::to_string(space_.dim));
    }
  }

  static CoeffVector scalar(cplx a) { return CoeffVector(CoeffSpaceSpec::scalar(), {a}); }

  /// Unit vector e_i (zero based) in the given space.
  static CoeffVector unit(CoeffSpaceSpec space, std::size_t i) {
    CoeffVector v(space);
    v.entries_.at(i) = 1.0;
    return v;
  }

  const CoeffSpaceSpec& space() const { return space_; }
  std::size_t dim() const { return entries_.size(); }
  std::span<const cplx> entries() const { return entries_; }
  cplx operator[](std::size_t i) const { return entries_[i]; }
  cplx& operator[](std::size_t i) { return entries_[i]; }

  double norm() const { return norm_of(entries_, space_.norm); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](cplx x) { return x == cplx{}; });
  }

  CoeffVector& operator+=(const CoeffVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  CoeffVector& operator-=(const CoeffVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  CoeffVector& operator*=(cplx s) {
    for (auto& x : entries_) x *= s;
    return *this;
  }

  friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
  friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
  friend CoeffVector operator*(CoeffVector a, cplx s) { return a *= s; }
  friend CoeffVector operator*(cplx s, CoeffVector a) { return a *= s; }

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;

 private:
  void check_same(const CoeffVector& o) const {
    if (!(o.space_ == space_)) throw std::invalid_argument("coefficient spaces differ");
  }

  std::vector<cplx> entries_;
  CoeffSpaceSpec space_;
};

}  // namespace hardy
