#pragma once

// JSON and CSV encodings.
//
//   DirichletPoly  {"space": {"dim": d, "norm": "l1|l2|linf"},
//                   "coeffs": [{"n": 6, "re": [..d..], "im": [..d..]}, ...]}
//   PowerPoly      same, with "alpha": [e_1, e_2, ...] in place of "n"
//   NormEstimate   {"value", "method", "std_error", "samples", "seed"} (+ "R")
//
// Doubles are written in shortest round-trip form.

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "hardy/analysis.hpp"
#include "hardy/norms.hpp"
#include "hardy/partial_sums.hpp"
#include "hardy/poisson.hpp"
#include "hardy/poly.hpp"
#include "hardy/translations.hpp"

namespace hardy::io {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline json to_json(const CoeffSpaceSpec& s) { return {{"dim", s.dim}, {"norm", std::string(to_string(s.norm))}}; }

inline CoeffSpaceSpec space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("norm")) throw FormatError("space needs dim and norm");
  if (!j["dim"].is_number_unsigned() || j["dim"].get<std::uint64_t>() == 0) {
    throw FormatError("space.dim must be a positive integer");
  }
  if (!j["norm"].is_string()) throw FormatError("space.norm must be a string");
  try {
    return {j["dim"].get<std::size_t>(), parse_norm_kind(j["norm"].get<std::string>())};
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

namespace detail {

inline void put_coeff(json& entry, const CoeffVector& c) {
  json re = json::array(), im = json::array();
  for (const auto& x : c.entries()) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  entry["re"] = std::move(re);
  entry["im"] = std::move(im);
}

inline CoeffVector get_coeff(const json& entry, const CoeffSpaceSpec& space) {
  if (!entry.contains("re") || !entry.contains("im")) throw FormatError("coefficient needs re and im arrays");
  const json& re = entry["re"];
  const json& im = entry["im"];
  if (!re.is_array() || !im.is_array() || re.size() != space.dim || im.size() != space.dim) {
    throw FormatError("coefficient re/im must be arrays of length " + std::to_string(space.dim));
  }
  std::vector<cplx> v(space.dim);
  for (std::size_t i = 0; i < space.dim; ++i) {
    if (!re[i].is_number() || !im[i].is_number()) throw FormatError("coefficient entries must be numbers");
    v[i] = {re[i].get<double>(), im[i].get<double>()};
  }
  return CoeffVector(space, std::move(v));
}

inline std::uint64_t get_uint(const json& j, const char* what) {
  if (!j.is_number_unsigned()) throw FormatError(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

}  // namespace detail

inline json to_json(const DirichletPoly& d) {
  json coeffs = json::array();
  for (const auto& [n, a] : d) {
    json e{{"n", n}};
    detail::put_coeff(e, a);
    coeffs.push_back(std::move(e));
  }
  return {{"space", to_json(d.space())}, {"coeffs", std::move(coeffs)}};
}

inline json to_json(const PowerPoly& p) {
  json coeffs = json::array();
  for (const auto& [alpha, c] : p) {
    json e{{"alpha", std::vector<std::uint32_t>(alpha.exponents().begin(), alpha.exponents().end())}};
    detail::put_coeff(e, c);
    coeffs.push_back(std::move(e));
  }
  return {{"space", to_json(p.space())}, {"coeffs", std::move(coeffs)}};
}

/// True when the document's coefficients are keyed by "alpha".
inline bool is_power_poly(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) return false;
  return !j["coeffs"].empty() && j["coeffs"].front().contains("alpha");
}

inline DirichletPoly dirichlet_from_json(const json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw FormatError("Dirichlet polynomial needs space and a coeffs array");
  }
  DirichletPoly d(space_from_json(j["space"]));
  for (const auto& e : j["coeffs"]) {
    if (!e.is_object() || !e.contains("n")) throw FormatError("Dirichlet coefficient needs n");
    const std::uint64_t n = detail::get_uint(e["n"], "n");
    if (n == 0) throw FormatError("n must be >= 1");
    if (d.find(n)) throw FormatError("duplicate coefficient for n = " + std::to_string(n));
    d.set(n, detail::get_coeff(e, d.space()));
  }
  return d;
}

inline PowerPoly power_from_json(const json& j) {
  if (!j.is_object() || !j.contains("space") || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw FormatError("power polynomial needs space and a coeffs array");
  }
  PowerPoly p(space_from_json(j["space"]));
  for (const auto& e : j["coeffs"]) {
    if (!e.is_object() || !e.contains("alpha") || !e["alpha"].is_array()) {
      throw FormatError("power coefficient needs an alpha array");
    }
    std::vector<std::uint32_t> exps;
    for (const auto& x : e["alpha"]) {
      const std::uint64_t v = detail::get_uint(x, "alpha entry");
      if (v > std::numeric_limits<std::uint32_t>::max()) throw FormatError("alpha entry too large");
      exps.push_back(static_cast<std::uint32_t>(v));
    }
    MultiIndex alpha(std::move(exps));
    if (p.find(alpha)) throw FormatError("duplicate coefficient for alpha = " + alpha.to_string());
    p.set(alpha, detail::get_coeff(e, p.space()));
  }
  return p;
}

inline json to_json(const NormEstimate& e) {
  json j{{"value", e.value},
         {"method", std::string(to_string(e.method))},
         {"std_error", e.std_error},
         {"samples", e.samples},
         {"seed", e.seed}};
  if (e.method == NormMethod::VerticalMean || e.method == NormMethod::VerticalSup) j["R"] = e.horizon;
  return j;
}

inline NormEstimate estimate_from_json(const json& j) {
  try {
    NormEstimate e;
    e.value = j.at("value").get<double>();
    e.method = parse_norm_method(j.at("method").get<std::string>());
    e.std_error = j.at("std_error").get<double>();
    e.samples = j.at("samples").get<std::uint64_t>();
    e.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("R")) e.horizon = j["R"].get<double>();
    return e;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("bad norm estimate: ") + ex.what());
  }
}

/// p as a JSON value; infinity is written as the string "inf".
inline json p_to_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

inline json to_json(const CriterionReport& r) {
  json rows = json::array();
  for (const auto& row : r.per_m) rows.push_back({{"m", row.m}, {"estimate", to_json(row.estimate)}});
  return {{"label", r.label},
          {"p", p_to_json(r.p)},
          {"per_m", std::move(rows)},
          {"verdict", std::string(to_string(r.verdict))},
          {"sup_value", r.sup_value}};
}

inline json to_json(const ContractionResult& c) {
  return {{"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}, {"holds", c.holds()}};
}

// ---------------------------------------------------------------------------
// CSV

/// Shortest decimal that reads back to the same double.
inline std::string fmt_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string eps_profile_csv(std::span<const EpsRow> rows) {
  std::ostringstream os;
  os << "eps,value,std_error\n";
  for (const auto& r : rows) {
    os << fmt_double(r.eps) << ',' << fmt_double(r.estimate.value) << ',' << fmt_double(r.estimate.std_error) << '\n';
  }
  return os.str();
}

inline std::string log_bound_csv(std::span<const LogBoundRow> rows) {
  std::ostringstream os;
  os << "N,ratio,ratio_over_log,p,method,std_error\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.ratio_over_log) << ',' << fmt_double(r.p) << ','
       << to_string(r.method) << ',' << fmt_double(r.std_error) << '\n';
  }
  return os.str();
}

inline std::string criterion_csv(const CriterionReport& r) {
  std::ostringstream os;
  os << "m,norm\n";
  for (const auto& row : r.per_m) os << row.m << ',' << fmt_double(row.estimate.value) << '\n';
  return os.str();
}

inline std::string estimate_csv(const NormEstimate& e) {
  std::ostringstream os;
  os << "value,method,std_error,samples,seed\n"
     << fmt_double(e.value) << ',' << to_string(e.method) << ',' << fmt_double(e.std_error) << ',' << e.samples << ','
     << e.seed << '\n';
  return os.str();
}

}  // namespace hardy::io
