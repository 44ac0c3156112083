#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardy/coeff.hpp"
#include "hardy/poly.hpp"

namespace hardy {

/// Compiled form of a PowerPoly for repeated evaluation.
///
/// Every needed monomial z^alpha is a node obtained from a parent node by one
/// multiplication with a single variable, so a point costs one complex
/// multiply per node plus one axpy per stored coefficient.
class MonomialEvaluator {
 public:
  explicit MonomialEvaluator(const PowerPoly& p) : space_(p.space()), width_(p.width()) {
    std::map<MultiIndex, std::uint32_t> ids;
    ids.emplace(MultiIndex{}, 0);
    nodes_.push_back({0, 0});
    for (const auto& [alpha, c] : p) {
      terms_.push_back(intern(alpha, ids));
      coeffs_.insert(coeffs_.end(), c.entries().begin(), c.entries().end());
    }
  }

  std::size_t width() const { return width_; }
  std::size_t dim() const { return space_.dim; }
  const CoeffSpaceSpec& space() const { return space_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Per-thread scratch space.
  struct Workspace {
    std::vector<cplx> mono;
    std::vector<cplx> value;
  };
  Workspace workspace() const { return {std::vector<cplx>(nodes_.size()), std::vector<cplx>(space_.dim)}; }

  /// P(z) into ws.value. z must cover width() coordinates.
  std::span<const cplx> evaluate(std::span<const cplx> z, Workspace& ws) const {
    if (z.size() < width_) throw std::invalid_argument("evaluation point has fewer coordinates than the polynomial width");
    ws.mono[0] = 1.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) ws.mono[i] = ws.mono[nodes_[i].parent] * z[nodes_[i].var];
    std::fill(ws.value.begin(), ws.value.end(), cplx{});
    const std::size_t d = space_.dim;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const cplx m = ws.mono[terms_[t]];
      const cplx* c = &coeffs_[t * d];
      for (std::size_t i = 0; i < d; ++i) ws.value[i] += c[i] * m;
    }
    return ws.value;
  }

  double norm_at(std::span<const cplx> z, Workspace& ws) const { return norm_of(evaluate(z, ws), space_.norm); }

 private:
  struct Node {
    std::uint32_t parent;
    std::uint32_t var;
  };

  std::uint32_t intern(const MultiIndex& alpha, std::map<MultiIndex, std::uint32_t>& ids) {
    if (auto it = ids.find(alpha); it != ids.end()) return it->second;
    std::vector<std::uint32_t> e(alpha.exponents().begin(), alpha.exponents().end());
    std::size_t j = 0;
    while (e[j] == 0) ++j;
    --e[j];
    const std::uint32_t parent = intern(MultiIndex(std::move(e)), ids);
    nodes_.push_back({parent, static_cast<std::uint32_t>(j)});
    const auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
    ids.emplace(alpha, id);
    return id;
  }

  CoeffSpaceSpec space_;
  std::size_t width_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> terms_;
  std::vector<cplx> coeffs_;
};

/// One-off evaluation of P at z.
inline CoeffVector evaluate(const PowerPoly& p, std::span<const cplx> z) {
  MonomialEvaluator ev(p);
  auto ws = ev.workspace();
  auto v = ev.evaluate(z, ws);
  return CoeffVector(p.space(), std::vector<cplx>(v.begin(), v.end()));
}

}  // namespace hardy
