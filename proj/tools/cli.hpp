#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "hardy/hardy.hpp"
#include "hardy/io.hpp"

namespace hardy::cli {

enum class Format { Json, Csv };

struct ExperimentSpec {
  std::string subcommand;
  std::optional<std::string> input_path;
  std::map<std::string, std::string> params;  ///< flag name without dashes -> raw value
  std::optional<std::string> output_path;
  std::optional<Format> format;
};

enum ExitStatus : int { kOk = 0, kValidation = 2, kCheckFailed = 3 };

namespace detail {

using io::json;

struct Command {
  std::string_view name;
  std::string_view help;
  std::set<std::string> flags;
  bool needs_input;
};

inline const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"lift", "Dirichlet polynomial -> power series", {}, true},
      {"transform", "power series -> Dirichlet polynomial", {}, true},
      {"norm", "H_p norm estimate", {"p", "samples", "seed", "scheme", "grid", "R", "t-samples", "exact", "family", "size"}, false},
      {"translate", "vertical translate D_{eps+it}", {"eps", "t", "p", "samples", "seed", "scheme"}, true},
      {"eps-profile", "||D_eps||_p along a grid of eps", {"eps", "p", "samples", "seed", "scheme", "family", "size"}, false},
      {"poisson", "Poisson convolution and the L_p contraction", {"radii", "p", "samples", "seed", "scheme", "grid"}, true},
      {"log-bound", "||S_N D|| / ||D|| over a sweep of N", {"family", "N", "p", "samples", "seed", "scheme", "R", "t-samples"}, false},
      {"abel-check", "summation-by-parts identity", {"N", "M", "eps", "family", "size", "seed"}, false},
      {"criterion", "sup_m ||f_m||_p for a coefficient family", {"family", "size", "N", "p", "samples", "seed", "scheme", "grid"}, false},
      {"cayley-check", "Stolz ratio and Cayley round trip", {"eps", "t"}, false},
      {"gallery", "canonical series", {"name", "size", "seed", "sigma"}, false},
  };
  return table;
}

inline const Command& command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown subcommand '" + name + "'");
}

// --- parameter access ------------------------------------------------------

class Params {
 public:
  explicit Params(const ExperimentSpec& spec) : p_(spec.params) {}

  bool has(const std::string& k) const { return p_.count(k) != 0; }

  std::string str(const std::string& k, std::string def) const { return has(k) ? p_.at(k) : def; }

  std::string required(const std::string& k) const {
    if (!has(k)) throw std::invalid_argument("missing required flag --" + k);
    return p_.at(k);
  }

  double real(const std::string& k, double def) const { return has(k) ? parse_real(k, p_.at(k)) : def; }

  std::uint64_t uint(const std::string& k, std::uint64_t def) const {
    return has(k) ? parse_uint(k, p_.at(k)) : def;
  }

  std::vector<double> reals(const std::string& k) const {
    std::vector<double> out;
    for (const auto& s : split(p_.at(k))) out.push_back(parse_real(k, s));
    if (out.empty()) throw std::invalid_argument("--" + k + " needs at least one value");
    return out;
  }

  std::vector<std::uint64_t> uints(const std::string& k) const {
    std::vector<std::uint64_t> out;
    for (const auto& s : split(p_.at(k))) out.push_back(parse_uint(k, s));
    if (out.empty()) throw std::invalid_argument("--" + k + " needs at least one value");
    return out;
  }

  /// p >= 1 or "inf".
  double exponent(double def) const {
    if (!has("p")) return def;
    const std::string& s = p_.at("p");
    if (s == "inf" || s == "infinity" || s == "Inf") return kInfinity;
    const double v = parse_real("p", s);
    if (!(v >= 1.0)) throw std::invalid_argument("--p must be >= 1 or inf");
    return v;
  }

  SamplerConfig sampler() const {
    SamplerConfig cfg;
    cfg.samples = uint("samples", cfg.samples);
    cfg.seed = uint("seed", 0);
    if (has("scheme")) cfg.scheme = parse_sample_scheme(p_.at("scheme"));
    if (cfg.samples < 2) throw std::invalid_argument("--samples must be >= 2");
    return cfg;
  }

 private:
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  static double parse_real(const std::string& k, const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty() || !std::isfinite(v)) {
      throw std::invalid_argument("--" + k + ": '" + s + "' is not a finite number");
    }
    return v;
  }

  static std::uint64_t parse_uint(const std::string& k, const std::string& s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("--" + k + ": '" + s + "' is not a non-negative integer");
    }
    return v;
  }

  const std::map<std::string, std::string>& p_;
};

// --- input / output --------------------------------------------------------

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("input '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write output file '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::invalid_argument("failed writing output file '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::invalid_argument("cannot move output into place at '" + path + "'");
  }
}

struct Output {
  Output(std::string t) : text(std::move(t)) {}
  std::string text;
  bool check_failed = false;
  std::string message;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline Format format_or(const ExperimentSpec& spec, Format def) { return spec.format.value_or(def); }

inline void require_json(const ExperimentSpec& spec) {
  if (format_or(spec, Format::Json) != Format::Json) {
    throw std::invalid_argument(spec.subcommand + " only emits JSON");
  }
}

/// The input series, or a gallery entry selected by --family/--size.
inline DirichletPoly dirichlet_input(const ExperimentSpec& spec, const Params& ps) {
  if (spec.input_path) {
    const json j = read_json(*spec.input_path);
    if (io::is_power_poly(j)) return bohr_transform(io::power_from_json(j));
    return io::dirichlet_from_json(j);
  }
  if (ps.has("family")) {
    GalleryParams gp;
    gp.seed = ps.uint("seed", 0);
    return gallery(ps.str("family", ""), ps.uint("size", 16), gp);
  }
  throw std::invalid_argument(spec.subcommand + " needs an input file or --family");
}

inline PowerPoly power_input(const ExperimentSpec& spec) {
  const json j = read_json(spec.input_path.value());
  if (io::is_power_poly(j)) return io::power_from_json(j);
  return bohr_lift(io::dirichlet_from_json(j));
}

// --- subcommands -----------------------------------------------------------

inline Output cmd_lift(const ExperimentSpec& spec, const Params&) {
  require_json(spec);
  return {dump(io::to_json(bohr_lift(io::dirichlet_from_json(read_json(*spec.input_path)))))};
}

inline Output cmd_transform(const ExperimentSpec& spec, const Params&) {
  require_json(spec);
  return {dump(io::to_json(bohr_transform(io::power_from_json(read_json(*spec.input_path)))))};
}

inline Output cmd_norm(const ExperimentSpec& spec, const Params& ps) {
  const double p = ps.exponent(2.0);
  const SamplerConfig cfg = ps.sampler();
  NormEstimate e;
  if (ps.has("exact")) {
    if (p != 2.0) throw std::invalid_argument("--exact is only available at --p 2");
    const DirichletPoly d = dirichlet_input(spec, ps);
    e = norm_h2_exact(d);
  } else if (ps.has("R")) {
    const DirichletPoly d = dirichlet_input(spec, ps);
    const double r = ps.real("R", 0);
    const auto nodes = ps.uint("t-samples", 20001);
    e = std::isinf(p) ? vertical_sup(d, r, nodes) : vertical_mean(d, p, r, nodes);
  } else if (spec.input_path && io::is_power_poly(read_json(*spec.input_path))) {
    e = norm_auto(power_input(spec), p, cfg, ps.uint("grid", 32));
  } else {
    e = norm_auto(dirichlet_input(spec, ps), p, cfg, ps.uint("grid", 32));
  }
  if (format_or(spec, Format::Json) == Format::Csv) return {io::estimate_csv(e)};
  return {dump(io::to_json(e))};
}

inline Output cmd_translate(const ExperimentSpec& spec, const Params& ps) {
  const DirichletPoly d = dirichlet_input(spec, ps);
  const std::vector<double> eps = ps.has("eps") ? ps.reals("eps") : std::vector<double>{0.0};
  const double t = ps.real("t", 0.0);
  if (format_or(spec, Format::Json) == Format::Json) {
    if (eps.size() != 1) throw std::invalid_argument("JSON output of translate takes a single --eps");
    return {dump(io::to_json(translate(d, cplx(eps.front(), t))))};
  }
  // CSV: the norm of each translate on one shared sample.
  const double p = ps.exponent(2.0);
  if (std::isinf(p)) throw std::invalid_argument("translate CSV needs a finite --p");
  const SamplerConfig cfg = ps.sampler();
  std::vector<EpsRow> rows;
  for (double e : eps) {
    if (!(e >= 0)) throw std::invalid_argument("--eps must be >= 0");
    rows.push_back({e, norm_auto(translate(d, cplx(e, t)), p, cfg)});
  }
  return {io::eps_profile_csv(rows)};
}

inline Output cmd_eps_profile(const ExperimentSpec& spec, const Params& ps) {
  const DirichletPoly d = dirichlet_input(spec, ps);
  const double p = ps.exponent(2.0);
  if (std::isinf(p)) throw std::invalid_argument("eps-profile needs a finite --p");
  const std::vector<double> grid = ps.has("eps") ? ps.reals("eps") : default_eps_grid();
  const auto rows = eps_norm_profile(d, p, grid, ps.sampler());
  if (format_or(spec, Format::Csv) == Format::Csv) return {io::eps_profile_csv(rows)};
  json arr = json::array();
  for (const auto& r : rows) arr.push_back({{"eps", r.eps}, {"estimate", io::to_json(r.estimate)}});
  return {dump(arr)};
}

inline Output cmd_poisson(const ExperimentSpec& spec, const Params& ps) {
  require_json(spec);
  const PowerPoly f = power_input(spec);
  std::vector<double> radii = ps.reals("radii");
  if (radii.size() == 1 && f.width() > 1) radii.assign(f.width(), radii.front());
  const RadiusVector r(radii);
  const double p = ps.exponent(2.0);
  if (std::isinf(p)) throw std::invalid_argument("poisson contraction check needs a finite --p");
  const PowerPoly conv = poisson_convolve_exact(f, r);
  const ContractionResult c = contraction_check(f, r, p, ps.sampler());
  json out{{"convolved", io::to_json(conv)}, {"p", p}, {"contraction", io::to_json(c)}};
  if (ps.has("grid")) {
    const PowerPoly num = poisson_convolve_numeric(f, r, ps.uint("grid", 64));
    out["numeric_max_coeff_gap"] = max_coeff_gap(conv, num);
  }
  Output o{dump(out)};
  if (!c.holds()) {
    o.check_failed = true;
    o.message = "contraction check failed: ||F_r||_p exceeds ||f||_p beyond three standard errors";
  }
  return o;
}

inline Output cmd_log_bound(const ExperimentSpec& spec, const Params& ps) {
  const double p = ps.exponent(kInfinity);
  std::vector<std::uint64_t> ns;
  if (ps.has("N")) {
    ns = ps.uints("N");
  } else {
    for (std::uint64_t n = 4; n <= 4096; n *= 2) ns.push_back(n);
  }
  GalleryParams gp;
  gp.seed = ps.uint("seed", 0);
  const std::string name = ps.str("family", "zeta_shift");
  gallery(name, 1, gp);  // validates the name before the sweep
  LogBoundOptions opt;
  opt.horizon_per_index = ps.real("R", opt.horizon_per_index);
  opt.t_samples = ps.uint("t-samples", opt.t_samples);
  const auto rows = log_bound_experiment([&](std::uint64_t n) { return gallery(name, n, gp); }, p, ns,
                                         ps.sampler(), opt);
  if (format_or(spec, Format::Csv) == Format::Csv) return {io::log_bound_csv(rows)};
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"N", r.n},
                   {"ratio", r.ratio},
                   {"ratio_over_log", r.ratio_over_log},
                   {"p", io::p_to_json(r.p)},
                   {"method", std::string(to_string(r.method))},
                   {"std_error", r.std_error}});
  }
  return {dump(json{{"rows", arr}, {"final_octave_ratio", final_octave_ratio(rows)}})};
}

inline constexpr double kAbelTolerance = 1e-12;
inline constexpr double kStolzTolerance = 1e-12;

inline Output cmd_abel_check(const ExperimentSpec& spec, const Params& ps) {
  require_json(spec);
  const DirichletPoly d = dirichlet_input(spec, ps);
  const auto lo = ps.uint("N", 2);
  const auto hi = ps.has("M") ? ps.uint("M", 0) : d.max_index();
  const double eps = ps.real("eps", 0.5);
  const AbelCheck a = abel_identity_check(d, lo, hi, eps);
  const bool ok = a.relative_gap <= kAbelTolerance;
  Output o{dump(json{{"N", lo},
                     {"M", hi},
                     {"eps", eps},
                     {"lhs", io::to_json(a.lhs)},
                     {"rhs", io::to_json(a.rhs)},
                     {"max_coeff_gap", a.max_coeff_gap},
                     {"relative_gap", a.relative_gap},
                     {"holds", ok}})};
  if (!ok) {
    o.check_failed = true;
    o.message = "summation-by-parts identity gap " + io::fmt_double(a.relative_gap) + " exceeds tolerance";
  }
  return o;
}

inline CoeffFamily criterion_family(const Params& ps) {
  const std::string name = ps.str("family", "first_linear");
  if (name == "first_linear") return family_first_linear(ps.uint("size", 5));
  if (name == "all_linear") return family_all_linear();
  if (name == "c0") return family_c0(ps.uint("size", 8));
  throw std::invalid_argument("unknown criterion family '" + name + "' (expected first_linear, all_linear or c0)");
}

inline Output cmd_criterion(const ExperimentSpec& spec, const Params& ps) {
  const CoeffFamily fam = criterion_family(ps);
  const double p = ps.exponent(2.0);
  CriterionOptions opt;
  opt.grid_per_dim = ps.uint("grid", opt.grid_per_dim);
  const auto rep = hilbert_criterion(fam, p, ps.uint("N", 8), ps.sampler(), opt);
  if (format_or(spec, Format::Json) == Format::Csv) return {io::criterion_csv(rep)};
  return {dump(io::to_json(rep))};
}

inline Output cmd_cayley_check(const ExperimentSpec& spec, const Params& ps) {
  require_json(spec);
  const std::vector<double> eps = ps.has("eps") ? ps.reals("eps") : std::vector<double>{1.0};
  const std::vector<double> ts = ps.has("t") ? ps.reals("t") : std::vector<double>{1.0};
  json rows = json::array();
  double worst = 0;
  bool ok = true;
  for (double e : eps) {
    for (double t : ts) {
      const StolzRatio s = stolz_ratio(e, t);
      const cplx pt(e, t);
      double round_trip = std::nan("");
      try {
        round_trip = std::abs(cayley(cayley_inv(pt)) - pt) / std::max(1.0, std::abs(pt));
      } catch (const std::invalid_argument&) {
        // phi^{-1}(s) rounded onto the unit circle
      }
      const double gap = std::abs(s.lhs - s.rhs) / s.rhs;
      ok = ok && gap <= kStolzTolerance && round_trip <= kStolzTolerance;
      worst = hardy::detail::nan_max(worst, hardy::detail::nan_max(gap, round_trip));
      rows.push_back({{"eps", e}, {"t", t}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"gap", gap}, {"cayley_round_trip", round_trip}});
    }
  }
  Output o{dump(json{{"rows", rows}, {"max_gap", worst}, {"holds", ok}})};
  if (!ok) {
    o.check_failed = true;
    o.message = "Stolz ratio / Cayley round trip gap " + io::fmt_double(worst) + " exceeds tolerance";
  }
  return o;
}

inline Output cmd_gallery(const ExperimentSpec& spec, const Params& ps) {
  require_json(spec);
  GalleryParams gp;
  gp.seed = ps.uint("seed", 0);
  gp.sigma = ps.real("sigma", gp.sigma);
  return {dump(io::to_json(gallery(ps.required("name"), ps.uint("size", 8), gp)))};
}

inline Output dispatch(const ExperimentSpec& spec) {
  const Command& c = command(spec.subcommand);
  for (const auto& [k, v] : spec.params) {
    if (!c.flags.count(k)) throw std::invalid_argument("--" + k + " does not apply to " + spec.subcommand);
  }
  if (c.needs_input && !spec.input_path) throw std::invalid_argument(spec.subcommand + " needs an input file");
  const Params ps(spec);
  const std::string& s = spec.subcommand;
  if (s == "lift") return cmd_lift(spec, ps);
  if (s == "transform") return cmd_transform(spec, ps);
  if (s == "norm") return cmd_norm(spec, ps);
  if (s == "translate") return cmd_translate(spec, ps);
  if (s == "eps-profile") return cmd_eps_profile(spec, ps);
  if (s == "poisson") return cmd_poisson(spec, ps);
  if (s == "log-bound") return cmd_log_bound(spec, ps);
  if (s == "abel-check") return cmd_abel_check(spec, ps);
  if (s == "criterion") return cmd_criterion(spec, ps);
  if (s == "cayley-check") return cmd_cayley_check(spec, ps);
  return cmd_gallery(spec, ps);
}

}  // namespace detail

/// Executes one subcommand. The result goes to spec.output_path (atomically)
/// or to `out`; diagnostics go to `err`.
inline int run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    const detail::Output o = detail::dispatch(spec);
    if (spec.output_path) {
      detail::write_atomic(*spec.output_path, o.text);
    } else {
      out << o.text;
    }
    if (o.check_failed) {
      err << "error: " << o.message << "\n";
      return kCheckFailed;
    }
    return kOk;
  } catch (const EstimatorInconsistency& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

/// Parses a command line into an ExperimentSpec and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hardy-space computations for Dirichlet series"};
  app.require_subcommand(1);
  app.fallthrough(false);

  ExperimentSpec spec;
  std::map<std::string, std::string> values;
  std::string input, output, format;
  bool exact = false;

  static const std::vector<std::pair<std::string, std::string>> kValueFlags{
      {"p", "exponent p >= 1 or inf"},
      {"samples", "Monte Carlo sample count"},
      {"seed", "random seed (default 0)"},
      {"scheme", "iid or kronecker"},
      {"grid", "grid points per variable"},
      {"R", "vertical half-width (log-bound: per unit of N)"},
      {"t-samples", "vertical quadrature nodes"},
      {"radii", "comma-separated radii in [0,1)"},
      {"eps", "comma-separated eps values"},
      {"t", "imaginary part(s)"},
      {"N", "index or comma-separated list of N (criterion: m_max)"},
      {"M", "upper summation index"},
      {"family", "gallery or coefficient family name"},
      {"size", "family size"},
      {"name", "gallery entry name"},
      {"sigma", "zeta_shift exponent"},
  };

  for (const auto& c : detail::commands()) {
    CLI::App* sub = app.add_subcommand(std::string(c.name), std::string(c.help));
    sub->add_option("input", input, "input JSON file");
    sub->add_option("--out", output, "output path (written atomically); stdout if omitted");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    for (const auto& [flag, help] : kValueFlags) {
      if (c.flags.count(flag)) sub->add_option("--" + flag, values[flag], help);
    }
    if (c.flags.count("exact")) sub->add_flag("--exact", exact, "require the closed-form H_2 norm");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kValidation;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_subcommands().empty() && sub->count("--help")) return kOk;
  spec.subcommand = sub->get_name();
  if (sub->count("input")) spec.input_path = input;
  if (sub->count("--out")) spec.output_path = output;
  if (sub->count("--format")) spec.format = format == "csv" ? Format::Csv : Format::Json;
  for (const auto& [flag, help] : kValueFlags) {
    if (sub->get_option_no_throw("--" + flag) && sub->count("--" + flag)) spec.params[flag] = values[flag];
  }
  if (exact) spec.params["exact"] = "1";
  return run(spec, out, err);
}

}  // namespace hardy::cli
