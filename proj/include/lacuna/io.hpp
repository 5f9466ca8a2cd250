#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lacuna/bandfn.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/random.hpp"
#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace lacuna::io {

using json = nlohmann::json;

/// Configuration that does not match its schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Schema helpers

/// Rejects any key of `obj` outside `allowed`.
inline void require_fields(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw SchemaError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw SchemaError(std::string(where) + ": unknown field '" + key + "'");
}

inline const json& need(const json& obj, const std::string& key, std::string_view where) {
  if (!obj.contains(key)) throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  return obj.at(key);
}

template <typename T>
T get_as(const json& v, std::string_view where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(where) + ": " + e.what());
  }
}

template <typename T>
T field(const json& obj, const std::string& key, std::string_view where) {
  return get_as<T>(need(obj, key, where), std::string(where) + "." + key);
}

template <typename T>
T field_or(const json& obj, const std::string& key, T fallback, std::string_view where) {
  return obj.contains(key) ? get_as<T>(obj.at(key), std::string(where) + "." + key) : fallback;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

inline std::int64_t parse_int(std::string_view s, std::string_view where) {
  const std::string t = trim(s);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw SchemaError(std::string(where) + ": '" + t + "' is not an integer");
  return v;
}

inline double parse_double(std::string_view s, std::string_view where) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw SchemaError(std::string(where) + ": '" + t + "' is not a number");
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_text(const std::string& text, std::string_view where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string(where) + ": invalid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Sequences
//
// A sequence is a JSON array of integers or a string:
//   "1,2,4,8"                   inline list
//   "hadamard:n0:q:count"       q an integer or a fraction p/r
//   "sidon:N" / "sidon:A-B"     random Sidon window (size cycles over A..B)
//   "r:R:N"                     random window with parameter exactly R
//   any other string            path to a file holding a JSON array or list

inline bool is_inline_list(std::string_view s) {
  return !s.empty() && s.find_first_not_of("0123456789-+, \t") == std::string_view::npos;
}

inline Ratio parse_ratio(std::string_view s, std::string_view where) {
  const auto parts = split(s, '/');
  if (parts.size() == 1) return {parse_int(parts[0], where), 1};
  if (parts.size() == 2) return {parse_int(parts[0], where), parse_int(parts[1], where)};
  throw SchemaError(std::string(where) + ": bad ratio '" + std::string(s) + "'");
}

/// Size range "N" or "A-B".
inline std::pair<std::size_t, std::size_t> parse_size_range(std::string_view s, std::string_view where) {
  const auto dash = s.find('-');
  const auto lo = parse_int(s.substr(0, dash), where);
  const auto hi = dash == std::string_view::npos ? lo : parse_int(s.substr(dash + 1), where);
  if (lo < 1 || hi < lo) throw SchemaError(std::string(where) + ": bad size range '" + std::string(s) + "'");
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

/// Generates sequence number `index` of a spec; random specs use `rng`.
inline LacunarySequence sequence_from_spec(const std::string& spec, Rng& rng, std::size_t index = 0,
                                           std::string_view where = "sequence") {
  if (is_inline_list(spec)) {
    std::vector<std::int64_t> v;
    for (const auto& tok : split(spec, ','))
      if (!trim(tok).empty()) v.push_back(parse_int(tok, where));
    try {
      return LacunarySequence(std::move(v));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string(where) + ": " + e.what());
    }
  }
  const auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "hadamard") {
    if (parts.size() != 4) throw SchemaError(std::string(where) + ": expected hadamard:n0:q:count");
    try {
      return hadamard_sequence(parse_int(parts[1], where), parse_ratio(parts[2], where), parse_int(parts[3], where));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string(where) + ": " + e.what());
    }
  }
  if (kind == "sidon") {
    if (parts.size() != 2) throw SchemaError(std::string(where) + ": expected sidon:N or sidon:A-B");
    const auto [lo, hi] = parse_size_range(parts[1], where);
    const std::size_t n = lo + index % (hi - lo + 1);
    auto s = random_sidon(n, rng, static_cast<std::int64_t>(8 * n * n));
    if (!s) throw std::runtime_error(std::string(where) + ": could not draw a Sidon window of size " + std::to_string(n));
    return *s;
  }
  if (kind == "r") {
    if (parts.size() != 3) throw SchemaError(std::string(where) + ": expected r:R:N");
    const auto R = parse_int(parts[1], where);
    const auto n = static_cast<std::size_t>(parse_int(parts[2], where));
    auto s = random_with_parameter(R, n, rng, static_cast<std::int64_t>(64 * n * n));
    if (!s) throw std::runtime_error(std::string(where) + ": infeasible request R=" + std::to_string(R) + ", N=" + std::to_string(n));
    return *s;
  }
  const std::string text = trim(read_file(spec));
  if (is_inline_list(text)) return sequence_from_spec(text, rng, index, where);
  return sequence_from_spec(
      [&] {
        std::string joined;
        for (const auto& v : get_as<std::vector<std::int64_t>>(parse_json_text(text, where), where))
          joined += (joined.empty() ? "" : ",") + std::to_string(v);
        return joined;
      }(),
      rng, index, where);
}

inline LacunarySequence parse_sequence(const json& j, Rng& rng, std::string_view where = "sequence") {
  if (j.is_array()) {
    try {
      return LacunarySequence(get_as<std::vector<std::int64_t>>(j, where));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string(where) + ": " + e.what());
    }
  }
  if (j.is_string()) return sequence_from_spec(j.get<std::string>(), rng, 0, where);
  throw SchemaError(std::string(where) + ": expected an integer array or a sequence string");
}

inline json to_json(const LacunarySequence& s) { return json(s.terms()); }

// ---------------------------------------------------------------------------
// Interval sets: {"periodic": bool, "period": number, "intervals": [[l, r], ...]}
// or the shorthand "holes:eps,k".

inline IntervalSet parse_set(const json& j, std::string_view where = "set") {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("holes:", 0) != 0) throw SchemaError(std::string(where) + ": unknown set shorthand '" + s + "'");
    const auto args = split(std::string_view(s).substr(6), ',');
    if (args.size() != 2) throw SchemaError(std::string(where) + ": expected holes:eps,k");
    try {
      return IntervalSet::holes(parse_double(args[0], where), static_cast<int>(parse_int(args[1], where)));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string(where) + ": " + e.what());
    }
  }
  require_fields(j, where, {"periodic", "period", "intervals"});
  const bool periodic = field_or<bool>(j, "periodic", false, where);
  std::vector<Interval> iv;
  for (const auto& p : get_as<std::vector<std::array<double, 2>>>(need(j, "intervals", where), where))
    iv.push_back({p[0], p[1]});
  try {
    if (periodic) return IntervalSet::periodic(std::move(iv), field_or<double>(j, "period", 1.0, where));
    if (j.contains("period")) throw SchemaError(std::string(where) + ": 'period' requires periodic = true");
    return IntervalSet::finite(std::move(iv));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string(where) + ": " + e.what());
  }
}

inline json to_json(const IntervalSet& s) {
  json iv = json::array();
  for (const auto& i : s.intervals()) iv.push_back({i.lo, i.hi});
  json out{{"periodic", s.is_periodic()}, {"intervals", iv}};
  if (s.is_periodic()) out["period"] = s.period();
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials: {"coeffs": [[n, re, im], ...]} or {"spectrum": sequence} with
// coefficients drawn from the unit disc.

inline TrigPolynomial parse_poly(const json& j, Rng& rng, std::string_view where = "poly") {
  require_fields(j, where, {"coeffs", "spectrum"});
  if (j.contains("coeffs") == j.contains("spectrum"))
    throw SchemaError(std::string(where) + ": give exactly one of 'coeffs' or 'spectrum'");
  if (j.contains("spectrum")) return random_polynomial(parse_sequence(j.at("spectrum"), rng, where), rng);
  TrigPolynomial g;
  for (const auto& t : get_as<std::vector<std::tuple<std::int64_t, double, double>>>(j.at("coeffs"), where)) {
    const auto [n, re, im] = t;
    if (g.coefficient(n) != cplx{}) throw SchemaError(std::string(where) + ": frequency listed twice");
    g.set(n, {re, im});
  }
  return g;
}

inline json to_json(const TrigPolynomial& g) {
  json c = json::array();
  for (const auto& [n, v] : g.coefficients()) c.push_back({n, v.real(), v.imag()});
  return json{{"coeffs", c}};
}

/// "count,spectrum-spec,seed": `count` polynomials, polynomial i drawn with
/// Rng(derive_seed(seed, i)) on sequence_from_spec(spec, ·, i).
struct RandomPolySpec {
  std::size_t count = 0;
  std::string spectrum;
  std::uint64_t seed = 0;
};

inline RandomPolySpec parse_random_poly(const std::string& s) {
  const auto first = s.find(',');
  const auto last = s.rfind(',');
  if (first == std::string::npos || first == last) throw SchemaError("random-poly: expected count,spectrum-spec,seed");
  const auto count = parse_int(std::string_view(s).substr(0, first), "random-poly count");
  const auto seed = parse_int(std::string_view(s).substr(last + 1), "random-poly seed");
  if (count < 1 || seed < 0) throw SchemaError("random-poly: count must be positive and seed nonnegative");
  return {static_cast<std::size_t>(count), trim(std::string_view(s).substr(first + 1, last - first - 1)),
          static_cast<std::uint64_t>(seed)};
}

struct DrawnPolynomial {
  std::uint64_t seed = 0;
  TrigPolynomial poly;
};

inline DrawnPolynomial draw_random_poly(const RandomPolySpec& spec, std::size_t i) {
  const std::uint64_t seed = derive_seed(spec.seed, i);
  Rng rng(seed);
  const auto spectrum = sequence_from_spec(spec.spectrum, rng, i, "random-poly spectrum");
  return {seed, random_polynomial(spectrum, rng)};
}

// ---------------------------------------------------------------------------
// Band functions
//   {"b", "K", "islands": [{"n", "coeffs": [[k, re, im], ...]}]}      explicit
//   {"b", "K", "centres": sequence, "profile": "box"|"triangle"|"smooth",
//    "amplitudes": [[re, im], ...]}                                  generated
// Profiles are supported on [n - b/4, n + b/4].

inline BandFunction parse_band(const json& j, Rng& rng, std::string_view where = "band") {
  require_fields(j, where, {"b", "K", "islands", "centres", "profile", "amplitudes"});
  const double b = field<double>(j, "b", where);
  const int K = field_or<int>(j, "K", 64, where);
  if (!(b > 0.0)) throw SchemaError(std::string(where) + ": b must be positive");
  if (K < 0) throw SchemaError(std::string(where) + ": K must be >= 0");
  if (j.contains("islands") == j.contains("centres"))
    throw SchemaError(std::string(where) + ": give exactly one of 'islands' or 'centres'");
  if (j.contains("islands")) {
    if (j.contains("profile") || j.contains("amplitudes"))
      throw SchemaError(std::string(where) + ": 'profile'/'amplitudes' apply only with 'centres'");
    std::vector<Island> islands;
    for (const auto& isl : need(j, "islands", where)) {
      require_fields(isl, std::string(where) + ".islands[]", {"n", "coeffs"});
      Island out;
      out.n = field<std::int64_t>(isl, "n", where);
      out.coeffs.assign(2 * static_cast<std::size_t>(K) + 1, cplx{});
      for (const auto& t : get_as<std::vector<std::tuple<int, double, double>>>(need(isl, "coeffs", where), where)) {
        const auto [k, re, im] = t;
        if (std::abs(k) > K) throw SchemaError(std::string(where) + ": coefficient index exceeds K");
        out.coeffs[static_cast<std::size_t>(k + K)] = {re, im};
      }
      islands.push_back(std::move(out));
    }
    try {
      return BandFunction(b, K, std::move(islands));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string(where) + ": " + e.what());
    }
  }
  const auto centres = parse_sequence(j.at("centres"), rng, std::string(where) + ".centres");
  const auto profile = field_or<std::string>(j, "profile", "box", where);
  std::vector<cplx> amps(centres.size(), cplx{1.0});
  if (j.contains("amplitudes")) {
    const auto a = get_as<std::vector<std::array<double, 2>>>(j.at("amplitudes"), where);
    if (a.size() != centres.size()) throw SchemaError(std::string(where) + ": one amplitude per centre");
    for (std::size_t i = 0; i < a.size(); ++i) amps[i] = {a[i][0], a[i][1]};
  }
  std::vector<Profile> profiles;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    Profile p;
    if (profile == "box")
      p = box_profile(centres[i], b / 4.0);
    else if (profile == "triangle")
      p = triangle_profile(centres[i], b / 4.0);
    else if (profile == "smooth")
      p = smooth_random_profile(centres[i], b / 4.0, rng);
    else
      throw SchemaError(std::string(where) + ": unknown profile '" + profile + "'");
    profiles.push_back([p, a = amps[i]](double xi) { return a * p(xi); });
  }
  return make_band(centres, b, K, profiles);
}

inline json to_json(const BandFunction& f) {
  json islands = json::array();
  for (const auto& isl : f.islands()) {
    json c = json::array();
    for (int k = -f.K(); k <= f.K(); ++k) {
      const cplx v = isl.coeffs[static_cast<std::size_t>(k + f.K())];
      if (v != cplx{}) c.push_back({k, v.real(), v.imag()});
    }
    islands.push_back({{"n", isl.n}, {"coeffs", c}});
  }
  return json{{"b", f.b()}, {"K", f.K()}, {"islands", islands}};
}

// ---------------------------------------------------------------------------
// CSV output

/// Shortest round-trip-safe rendering: 17 significant digits.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "true" : "false"; }
inline std::string fmt(const std::string& v) { return v; }
inline std::string fmt(const char* v) { return v; }

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  template <typename... Ts>
  void add(const Ts&... cells) {
    if (sizeof...(Ts) != columns_.size()) throw std::logic_error("CsvTable: row width mismatch");
    rows_.push_back({quote(fmt(cells))...});
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  std::vector<std::vector<std::string>>& mutable_rows() noexcept { return rows_; }

  void write(std::ostream& out) const {
    write_row(out, columns_);
    for (const auto& r : rows_) write_row(out, r);
  }

 private:
  static std::string quote(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  static void write_row(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// FNV-1a 64-bit hash as 16 hex digits.
inline std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lacuna::io
