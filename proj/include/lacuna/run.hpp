#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lacuna/bandfn.hpp"
#include "lacuna/bump.hpp"
#include "lacuna/concentration.hpp"
#include "lacuna/io.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/periodize.hpp"
#include "lacuna/random.hpp"
#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace lacuna::run {

using io::json;
using io::SchemaError;

/// A hypothesis of the experiment fails for the given input.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical check that should hold by construction does not.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { ok = 0, internal_error = 1, schema_error = 2, hypothesis_error = 3, numerical_error = 4 };

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"lacunarity", "density", "lemma1",         "lemma2",
                                              "lemma3",     "theorem1", "periodize-check", "theorem2",
                                              "sharp-constant", "sweep"};
  return names;
}

struct Options {
  std::optional<std::uint64_t> seed;  // overrides the config's "seed"
  bool allow_hypothesis_violation = false;
  std::optional<std::string> random_poly;  // overrides the config's "random_poly"
};

struct Result {
  io::CsvTable table{{}};
  json resolved;                       // config with defaults and seed filled in
  std::vector<std::string> warnings;   // hypothesis violations let through
  std::optional<std::string> fault;    // numerical fault found after the table was built
};

namespace detail {

/// Reads config fields while recording the value actually used.
class Reader {
 public:
  Reader(const json& cfg, std::string where) : cfg_(cfg), where_(std::move(where)), resolved_(cfg) {}

  void allow(std::initializer_list<std::string_view> fields) const { io::require_fields(cfg_, where_, fields); }

  bool has(const std::string& key) const { return cfg_.contains(key); }
  const json& raw(const std::string& key) const { return io::need(cfg_, key, where_); }

  template <typename T>
  T get(const std::string& key) const {
    return io::field<T>(cfg_, key, where_);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!cfg_.contains(key)) {
      resolved_[key] = fallback;
      return fallback;
    }
    return io::field<T>(cfg_, key, where_);
  }

  void set(const std::string& key, json value) { resolved_[key] = std::move(value); }
  const json& resolved() const { return resolved_; }
  const std::string& where() const { return where_; }

 private:
  const json& cfg_;
  std::string where_;
  json resolved_;
};

template <typename T>
std::vector<T> one_or_many(const json& j, std::string_view where) {
  if (j.is_array()) return io::get_as<std::vector<T>>(j, where);
  return {io::get_as<T>(j, where)};
}

inline std::string set_label(const json& j, std::size_t i) {
  return j.is_string() ? j.get<std::string>() : "set" + std::to_string(i);
}

inline void violation(const std::string& msg, const Options& opt, Result& res) {
  if (!opt.allow_hypothesis_violation) throw HypothesisViolation(msg);
  res.warnings.push_back(msg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline Result run_lacunarity(detail::Reader& cfg, Rng& rng) {
  cfg.allow({"seed", "sequences"});
  Result res;
  res.table = io::CsvTable({"id", "size", "first", "last", "R", "sidon"});
  const auto& list = cfg.raw("sequences");
  if (!list.is_array()) throw SchemaError("lacunarity.sequences: expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto s = io::parse_sequence(list[i], rng, "lacunarity.sequences[" + std::to_string(i) + "]");
    const auto first = s.size() ? s[0] : 0;
    const auto last = s.size() ? s[s.size() - 1] : 0;
    res.table.add(i, s.size(), first, last, lacunarity_parameter(s), is_sidon(s));
  }
  return res;
}

inline Result run_density(detail::Reader& cfg) {
  cfg.allow({"seed", "sets", "a", "b"});
  Result res;
  res.table = io::CsvTable({"set_id", "measure", "functional", "parameter", "value"});
  const auto& sets = cfg.raw("sets");
  if (!sets.is_array()) throw SchemaError("density.sets: expected an array");
  const auto as = cfg.has("a") ? detail::one_or_many<double>(cfg.raw("a"), "density.a") : std::vector<double>{};
  const auto bs = cfg.has("b") ? detail::one_or_many<double>(cfg.raw("b"), "density.b") : std::vector<double>{};
  if (as.empty() && bs.empty()) throw SchemaError("density: give 'a' and/or 'b'");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto E = io::parse_set(sets[i], "density.sets[" + std::to_string(i) + "]");
    if (!E.is_periodic()) throw SchemaError("density: sets must be periodic (no scan window in the config)");
    const std::string id = detail::set_label(sets[i], i);
    for (const double a : as) {
      if (!(a > 0.0)) throw SchemaError("density.a: must be positive");
      res.table.add(id, E.base_measure(), "relative_density", a, relative_density(E, a));
    }
    for (const double b : bs) {
      if (!(b > 0.0)) throw SchemaError("density.b: must be positive");
      res.table.add(id, E.base_measure(), "complement_sparsity", b, complement_sparsity(E, b));
    }
  }
  return res;
}

inline Result run_lemma1(detail::Reader& cfg, Rng& rng, const Options& opt, std::uint64_t seed) {
  cfg.allow({"seed", "polys", "random_poly"});
  Result res;
  res.table = io::CsvTable({"index", "seed", "N", "R", "l4", "bound", "holds"});
  std::vector<std::pair<std::uint64_t, TrigPolynomial>> polys;
  if (cfg.has("polys")) {
    const auto& list = cfg.raw("polys");
    if (!list.is_array()) throw SchemaError("lemma1.polys: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      polys.emplace_back(seed, io::parse_poly(list[i], rng, "lemma1.polys[" + std::to_string(i) + "]"));
  }
  std::optional<io::RandomPolySpec> spec;
  if (opt.random_poly) {
    spec = io::parse_random_poly(*opt.random_poly);
    cfg.set("random_poly", *opt.random_poly);
  } else if (cfg.has("random_poly")) {
    spec = io::parse_random_poly(cfg.get<std::string>("random_poly"));
  }
  const std::size_t fixed = polys.size();
  const std::size_t drawn = spec ? spec->count : 0;
  if (fixed + drawn == 0) throw SchemaError("lemma1: give 'polys' and/or 'random_poly'");
  const auto rows = parallel_map(fixed + drawn, [&](std::size_t i) {
    const auto [s, g] = i < fixed ? polys[i] : [&] {
      auto d = io::draw_random_poly(*spec, i - fixed);
      return std::pair{d.seed, d.poly};
    }();
    return std::tuple{s, g.size(), lemma1_check(g)};
  });
  std::size_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [s, n, c] = rows[i];
    res.table.add(i, s, n, c.r_used, c.l4, c.bound, c.holds);
    failures += !c.holds;
  }
  if (failures) res.fault = std::to_string(failures) + " polynomial(s) exceed the (1+R)^(1/4) bound";
  return res;
}

namespace detail {

inline double relative_change(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline void lemma_common(Reader& cfg, Rng& rng, TrigPolynomial& g, double& b, IntervalSet& E,
                         std::optional<double>& T, bool& check) {
  g = io::parse_poly(cfg.raw("poly"), rng, cfg.where() + ".poly");
  b = cfg.get<double>("b", 1.0);
  if (!(b > 0.0)) throw SchemaError(cfg.where() + ".b: must be positive");
  E = io::parse_set(cfg.raw("set"), cfg.where() + ".set");
  if (!E.is_periodic()) throw SchemaError(cfg.where() + ".set: must be periodic");
  if (cfg.has("T")) T = cfg.get<double>("T");
  check = cfg.get<bool>("check_cutoff", true);
  if (g.is_zero()) throw SchemaError(cfg.where() + ".poly: zero polynomial");
}

}  // namespace detail

inline Result run_lemma2(detail::Reader& cfg, Rng& rng) {
  cfg.allow({"seed", "poly", "k", "b", "set", "T", "check_cutoff"});
  TrigPolynomial g;
  double b = 1.0;
  IntervalSet E;
  std::optional<double> T;
  bool check = true;
  detail::lemma_common(cfg, rng, g, b, E, T, check);
  const auto ks = detail::one_or_many<int>(cfg.get<json>("k", json(0)), "lemma2.k");
  Result res;
  res.table = io::CsvTable({"k", "b", "eps", "T", "lhs", "norm_sq", "ratio", "lhs_change_2T"});
  const auto rows = parallel_map(ks.size(), [&](std::size_t i) {
    const auto r = lemma2_ratio(g, ks[i], b, E, T);
    const double change = check ? detail::relative_change(r.lhs, lemma2_ratio(g, ks[i], b, E, 2.0 * r.T).lhs) : 0.0;
    return std::pair{r, change};
  });
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto& [r, change] = rows[i];
    res.table.add(ks[i], b, r.eps, r.T, r.lhs, r.norm_sq, r.ratio, change);
  }
  return res;
}

inline Result run_lemma3(detail::Reader& cfg, Rng& rng) {
  cfg.allow({"seed", "poly", "pairs", "b", "set", "T", "check_cutoff"});
  TrigPolynomial g;
  double b = 1.0;
  IntervalSet E;
  std::optional<double> T;
  bool check = true;
  detail::lemma_common(cfg, rng, g, b, E, T, check);
  const auto pairs = io::get_as<std::vector<std::array<int, 2>>>(cfg.raw("pairs"), "lemma3.pairs");
  for (const auto& p : pairs)
    if (p[0] == p[1]) throw SchemaError("lemma3.pairs: k and l must differ");
  Result res;
  res.table = io::CsvTable({"k", "l", "b", "eps", "T", "lhs", "norm_sq", "ratio", "lhs_change_2T"});
  const auto rows = parallel_map(pairs.size(), [&](std::size_t i) {
    const auto [k, l] = pairs[i];
    const auto r = lemma3_ratio(g, k, l, b, E, T);
    const double change = check ? detail::relative_change(r.lhs, lemma3_ratio(g, k, l, b, E, 2.0 * r.T).lhs) : 0.0;
    return std::pair{r, change};
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [r, change] = rows[i];
    res.table.add(pairs[i][0], pairs[i][1], b, r.eps, r.T, r.lhs, r.norm_sq, r.ratio, change);
  }
  return res;
}

namespace detail {

/// Band `sample` of the config: random profiles use Rng(derive_seed(seed, sample)).
inline BandFunction band_sample(const json& spec, std::uint64_t seed, std::size_t sample, const std::string& where) {
  Rng rng(derive_seed(seed, sample));
  return io::parse_band(spec, rng, where);
}

/// Structural hypotheses shared by the line experiments.
inline void check_band(const BandFunction& f, const std::string& where, const Options& opt, Result& res) {
  const auto guard = close_pair_guard(f);
  if (!guard.ok)
    violation(where + ": " + std::to_string(guard.close_pairs) + " close centre pairs exceed R*b = " +
                  io::fmt(static_cast<double>(guard.r_param) * f.b()),
              opt, res);
  const double residual = quarter_support_residual(f);
  if (residual >= 1e-6)
    violation(where + ": series carries " + io::fmt(residual) + " of its mass outside the quarter intervals", opt, res);
}

}  // namespace detail

inline Result run_theorem1(detail::Reader& cfg, const Options& opt, std::uint64_t seed) {
  cfg.allow({"seed", "band", "sets", "samples", "T"});
  Result res;
  res.table = io::CsvTable({"sample", "set_id", "b", "eps", "K", "T", "mass_out", "norm_sq", "ratio",
                            "concentration", "half_threshold_met", "guard_ok", "R"});
  const auto samples = cfg.get<int>("samples", 1);
  if (samples < 1) throw SchemaError("theorem1.samples: must be positive");
  const auto& sets_json = cfg.raw("sets");
  if (!sets_json.is_array() || sets_json.empty()) throw SchemaError("theorem1.sets: expected a nonempty array");
  std::vector<IntervalSet> sets;
  for (std::size_t i = 0; i < sets_json.size(); ++i) {
    sets.push_back(io::parse_set(sets_json[i], "theorem1.sets[" + std::to_string(i) + "]"));
    if (!sets.back().is_periodic()) throw SchemaError("theorem1.sets: sets must be periodic");
  }
  std::optional<double> T;
  if (cfg.has("T")) T = cfg.get<double>("T");
  std::vector<BandFunction> bands;
  for (int s = 0; s < samples; ++s) {
    bands.push_back(detail::band_sample(cfg.raw("band"), seed, static_cast<std::size_t>(s), "theorem1.band"));
    if (bands.back().is_zero()) throw SchemaError("theorem1.band: f is zero");
    detail::check_band(bands.back(), "theorem1 sample " + std::to_string(s), opt, res);
  }
  const std::size_t cells = bands.size() * sets.size();
  const auto rows = parallel_map(cells, [&](std::size_t c) {
    return theorem1_experiment(bands[c / sets.size()], sets[c % sets.size()], T);
  });
  for (std::size_t c = 0; c < cells; ++c) {
    const auto& r = rows[c];
    res.table.add(c / sets.size(), detail::set_label(sets_json[c % sets.size()], c % sets.size()), r.b, r.eps, r.K,
                  r.T, r.mass_out, r.norm_sq, r.ratio, r.concentration, r.half_threshold_met, r.guard_ok, r.r_param);
  }
  return res;
}

inline Result run_periodize_check(detail::Reader& cfg, Rng& rng, const Options& opt, std::uint64_t seed) {
  cfg.allow({"seed", "band", "points", "M", "x_range"});
  Result res;
  res.table = io::CsvTable({"t", "x", "slice_re", "slice_im", "direct_re", "direct_im", "abs_diff", "last_term",
                            "slow_decay"});
  const auto f = detail::band_sample(cfg.raw("band"), seed, 0, "periodize-check.band");
  detail::check_band(f, "periodize-check", opt, res);
  const int points = cfg.get<int>("points", 20);
  const int M = cfg.get<int>("M", 500);
  const auto xr = cfg.get<std::array<double, 2>>("x_range", {-2.0, 2.0});
  if (points < 1 || M < 0 || !(xr[0] <= xr[1])) throw SchemaError("periodize-check: bad points, M or x_range");
  std::vector<std::pair<double, double>> tx;
  for (int i = 0; i < points; ++i) {
    const double t = rng.uniform(-0.5, 0.5);
    tx.emplace_back(t, rng.uniform(xr[0], xr[1]));
  }
  const auto rows = parallel_map(tx.size(), [&](std::size_t i) {
    const auto [t, x] = tx[i];
    return std::pair{slice_at(f, t)(x), direct_periodization(f, t, x, M)};
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [s, d] = rows[i];
    res.table.add(tx[i].first, tx[i].second, s.real(), s.imag(), d.value.real(), d.value.imag(), std::abs(s - d.value),
                  d.last_term, d.slow_decay);
  }
  return res;
}

inline Result run_theorem2(detail::Reader& cfg, const Options& opt, std::uint64_t seed) {
  cfg.allow({"seed", "band", "set", "Q", "T"});
  Result res;
  res.table = io::CsvTable({"row", "t", "norm_sq_t", "ratio_t"});
  const auto f = detail::band_sample(cfg.raw("band"), seed, 0, "theorem2.band");
  if (f.is_zero()) throw SchemaError("theorem2.band: f is zero");
  const auto E = io::parse_set(cfg.raw("set"), "theorem2.set");
  if (!E.is_periodic() || E.period() != 1.0) throw SchemaError("theorem2.set: must be 1-periodic");
  if (!(E.base_measure() > 0.0)) detail::violation("theorem2: |E| must be positive", opt, res);
  if (f.b() > 2.0) detail::violation("theorem2: b > 2 puts spectrum outside [n_i - 1/2, n_i + 1/2]", opt, res);
  const int Q = cfg.get<int>("Q", 256);
  if (Q < 1) throw SchemaError("theorem2.Q: must be positive");
  std::optional<double> T;
  if (cfg.has("T")) T = cfg.get<double>("T");
  const auto r = theorem2_experiment(f, E, Q, T);
  for (const auto& p : r.per_t) res.table.add("t", p.t, p.norm_sq, p.ratio);
  res.table.add("global_ratio", "", r.norm_integral, r.global_ratio);
  res.table.add("min_ratio", "", "", r.min_ratio);
  res.table.add("direct_ratio", "", r.norm_sq, r.direct_ratio);
  res.table.add("plancherel_double", "", "", r.double_integral);
  res.table.add("plancherel_direct", "", "", r.direct);
  if (!r.averaging_holds) res.fault = "global ratio below the minimum per-t ratio";
  return res;
}

inline void dump_matrix(const ComplexMatrix& M, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write matrix dump '" + path + "'");
  out << M.rows() << ' ' << M.cols() << '\n';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      out << (j ? " " : "") << io::fmt(M(i, j).real()) << ' ' << io::fmt(M(i, j).imag());
    out << '\n';
  }
}

inline Result run_sharp_constant(detail::Reader& cfg, Rng& rng) {
  cfg.allow({"seed", "problems", "matrix_out"});
  Result res;
  res.table = io::CsvTable({"id", "N", "gamma", "lambda_min", "lambda_max", "residual", "verification"});
  const auto& list = cfg.raw("problems");
  if (!list.is_array() || list.empty()) throw SchemaError("sharp-constant.problems: expected a nonempty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "sharp-constant.problems[" + std::to_string(i) + "]";
    io::require_fields(list[i], where, {"spectrum", "set"});
    const auto spectrum = io::parse_sequence(io::need(list[i], "spectrum", where), rng, where + ".spectrum");
    const auto E = io::parse_set(io::need(list[i], "set", where), where + ".set");
    if (!E.is_periodic() || E.period() != 1.0) throw SchemaError(where + ".set: must be 1-periodic");
    if (spectrum.size() == 0) throw SchemaError(where + ".spectrum: empty");
    const auto p = build_gram(spectrum, E);
    SharpConstant sc;
    try {
      sc = sharp_constant(p);
    } catch (const std::runtime_error& e) {
      throw NumericalFault(e.what());
    }
    if (cfg.has("matrix_out")) dump_matrix(p.gram, cfg.get<std::string>("matrix_out") + "." + std::to_string(i));
    res.table.add(i, spectrum.size(), E.base_measure(), sc.lambda_min, sc.lambda_max, sc.residual, sc.verification);
    if (std::abs(sc.verification - sc.lambda_min) > 1e-10)
      res.fault = "minimiser does not reproduce lambda_min for problem " + std::to_string(i);
  }
  return res;
}

inline Result run_sweep(detail::Reader& cfg, std::uint64_t seed) {
  cfg.allow({"seed", "gammas", "R", "N", "shapes", "seeds_per_cell"});
  const auto gammas = io::get_as<std::vector<double>>(cfg.raw("gammas"), "sweep.gammas");
  const auto Rs = io::get_as<std::vector<std::int64_t>>(cfg.raw("R"), "sweep.R");
  const auto Ns = io::get_as<std::vector<std::size_t>>(cfg.raw("N"), "sweep.N");
  std::vector<SetShape> shapes;
  for (const auto& s : cfg.get<std::vector<std::string>>("shapes", {"interval", "holes", "random"})) {
    try {
      shapes.push_back(parse_set_shape(s));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("sweep.shapes: ") + e.what());
    }
  }
  const auto per_cell = cfg.get<int>("seeds_per_cell", 1);
  if (gammas.empty() || Rs.empty() || Ns.empty() || shapes.empty() || per_cell < 1)
    throw SchemaError("sweep: empty grid");
  for (const double g : gammas)
    if (!(g > 0.0 && g <= 1.0)) throw SchemaError("sweep.gammas: values must lie in (0, 1]");
  for (const auto N : Ns)
    if (N < 1) throw SchemaError("sweep.N: values must be positive");
  auto report = constant_sweep(sweep_grid(gammas, Rs, Ns, shapes, static_cast<std::size_t>(per_cell), seed));
  auto& samples = report.samples;
  std::stable_sort(samples.begin(), samples.end(), [](const ConstantSample& a, const ConstantSample& b) {
    return std::tie(a.cell.gamma, a.cell.R, a.cell.N, a.set_id, a.spectrum_id) <
           std::tie(b.cell.gamma, b.cell.R, b.cell.N, b.set_id, b.spectrum_id);
  });
  Result res;
  res.table = io::CsvTable({"gamma", "R", "N", "set_id", "spectrum_id", "lambda_min", "status"});
  for (const auto& s : samples)
    res.table.add(s.cell.gamma, s.cell.R, s.cell.N, s.set_id, s.spectrum_id,
                  s.lambda_min ? io::fmt(*s.lambda_min) : std::string(), s.lambda_min ? "ok" : s.error);
  return res;
}

// ---------------------------------------------------------------------------

/// Runs one command on a parsed config. Throws SchemaError,
/// HypothesisViolation or NumericalFault.
inline Result run(const std::string& command, const json& config, const Options& opt = {}) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw SchemaError("unknown command '" + command + "'");
  if (!config.is_object()) throw SchemaError(command + ": config must be a JSON object");
  detail::Reader cfg(config, command);
  const std::uint64_t seed = opt.seed ? *opt.seed : cfg.get<std::uint64_t>("seed", 0);
  cfg.set("seed", seed);
  Rng rng(seed);
  Result res;
  try {
    if (command == "lacunarity") res = run_lacunarity(cfg, rng);
    else if (command == "density") res = run_density(cfg);
    else if (command == "lemma1") res = run_lemma1(cfg, rng, opt, seed);
    else if (command == "lemma2") res = run_lemma2(cfg, rng);
    else if (command == "lemma3") res = run_lemma3(cfg, rng);
    else if (command == "theorem1") res = run_theorem1(cfg, opt, seed);
    else if (command == "periodize-check") res = run_periodize_check(cfg, rng, opt, seed);
    else if (command == "theorem2") res = run_theorem2(cfg, opt, seed);
    else if (command == "sharp-constant") res = run_sharp_constant(cfg, rng);
    else res = run_sweep(cfg, seed);
  } catch (const std::domain_error& e) {
    throw HypothesisViolation(e.what());
  }
  json resolved = cfg.resolved();
  resolved["command"] = command;
  res.resolved = std::move(resolved);
  return res;
}

/// Comment header (generator, seed, config hash, resolved config) then the table.
inline void write_csv(std::ostream& out, const Result& res) {
  const std::string canonical = res.resolved.dump();
  out << "# lacuna " << res.resolved.at("command").get<std::string>() << '\n';
  out << "# generator: " << Rng::algorithm << '\n';
  out << "# seed: " << res.resolved.at("seed").get<std::uint64_t>() << '\n';
  out << "# config_hash: fnv1a64:" << io::fnv1a64(canonical) << '\n';
  out << "# config: " << canonical << '\n';
  for (const auto& w : res.warnings) out << "# hypothesis_violation: " << w << '\n';
  res.table.write(out);
}

/// One-line JSON error record.
inline std::string error_record(const std::string& kind, const std::string& command, const std::string& message) {
  return json{{"error", kind}, {"command", command}, {"message", message}}.dump();
}

/// φ and φ̌ on x = -20 .. 20 in steps of 1/64.
inline void dump_phi(std::ostream& out) {
  const auto& bump = default_bump();
  io::CsvTable t({"x", "phi", "phi_check"});
  for (int i = -1280; i <= 1280; ++i) {
    const double x = i / 64.0;
    t.add(x, bump.phi(x), bump.phi_check(x));
  }
  t.write(out);
}

}  // namespace lacuna::run
