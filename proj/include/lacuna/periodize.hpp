#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "lacuna/bandfn.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace lacuna {

/// The periodization g_t built spectrally: ĝ_t(l) = f̂(l + t).
inline TrigPolynomial slice_at(const BandFunction& f, double t) {
  if (std::abs(t) > 0.5) throw std::invalid_argument("slice_at: t must lie in [-1/2, 1/2]");
  std::set<std::int64_t> lattice;
  const double half = 0.5 * f.b();
  for (const auto& isl : f.islands()) {
    const double centre = static_cast<double>(isl.n) - t;
    for (auto l = static_cast<std::int64_t>(std::ceil(centre - half)); static_cast<double>(l) <= centre + half; ++l)
      lattice.insert(l);
  }
  TrigPolynomial g;
  for (const auto l : lattice) g.set(l, f.spectrum_at(static_cast<double>(l) + t));
  return g;
}

struct DirectPeriodization {
  cplx value;
  double last_term = 0.0;
  bool slow_decay = false;  // last included term exceeds 1e-3 of the running value
};

/// Partial sum Σ_{|k|<=M} f(x + k) e^{-i2πt(x + k)} with f from `synthesize`.
inline DirectPeriodization direct_periodization(const BandFunction& f, double t, double x, int M) {
  if (M < 0) throw std::invalid_argument("direct_periodization: M must be >= 0");
  std::vector<cplx> terms;
  terms.reserve(2 * static_cast<std::size_t>(M) + 1);
  for (int k = -M; k <= M; ++k) {
    const double y = x + k;
    const double ph = -2.0 * std::numbers::pi * t * y;
    terms.push_back(synthesize(f, y).value * cplx(std::cos(ph), std::sin(ph)));
  }
  DirectPeriodization out;
  out.value = pairwise_sum(terms);
  out.last_term = std::max(std::abs(terms.front()), std::abs(terms.back()));
  out.slow_decay = out.last_term > 1e-3 * std::abs(out.value);
  return out;
}

/// t-nodes of the Q-point midpoint rule on [-1/2, 1/2].
inline std::vector<double> midpoint_grid(int Q) {
  if (Q < 1) throw std::invalid_argument("midpoint_grid: Q must be positive");
  std::vector<double> t(static_cast<std::size_t>(Q));
  for (int j = 0; j < Q; ++j) t[static_cast<std::size_t>(j)] = -0.5 + (j + 0.5) / Q;
  return t;
}

struct AveragedPlancherel {
  double double_integral = 0.0;  // ∫_{-1/2}^{1/2} ∫_{E∩[0,1]} |g_t|^2 dx dt
  double direct = 0.0;           // ∫_{E ∩ [-T, T]} |f|^2
  double double_error = 0.0;     // |I_Q - I_{Q/2}| / 3
  double direct_error = 0.0;     // b Σ tail mass of the truncated representation
  double norm_integral = 0.0;    // ∫ ‖g_t‖_2^2 dt
  double T = 0.0;
};

namespace detail {

inline std::pair<double, double> t_average(const BandFunction& f, const IntervalSet& E, int Q) {
  const auto ts = midpoint_grid(Q);
  const auto cells = parallel_map(ts.size(), [&](std::size_t j) {
    const auto g = slice_at(f, ts[j]);
    return std::pair<double, double>{integral_over_set(g, E), g.norm_sq()};
  });
  std::vector<double> on_set, full;
  for (const auto& [a, b] : cells) on_set.push_back(a), full.push_back(b);
  return {pairwise_sum(on_set) / Q, pairwise_sum(full) / Q};
}

inline void require_unit_periodic(const IntervalSet& E, const char* who) {
  if (!E.is_periodic() || E.period() != 1.0) throw std::invalid_argument(std::string(who) + ": E must be 1-periodic");
}

}  // namespace detail

/// Both sides of ∫∫ |g_t|^2 over (E ∩ [0,1]) × [-1/2, 1/2] = ∫_E |f|^2.
inline AveragedPlancherel averaged_plancherel(const BandFunction& f, const IntervalSet& E, int Q,
                                              std::optional<double> T = std::nullopt) {
  detail::require_unit_periodic(E, "averaged_plancherel");
  AveragedPlancherel out;
  const auto [on_set, full] = detail::t_average(f, E, Q);
  out.double_integral = on_set;
  out.norm_integral = full;
  if (Q >= 2) out.double_error = std::abs(on_set - detail::t_average(f, E, Q / 2).first) / 3.0;
  out.T = T.value_or(band_cutoff(f));
  out.direct = band_mass_on(f, E, out.T);
  out.direct_error = f.b() * f.tail_mass();
  return out;
}

struct PeriodRatio {
  double t = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;
};

struct Theorem2Result {
  std::vector<PeriodRatio> per_t;  // nodes with ‖g_t‖^2 >= 1e-14
  double global_ratio = 0.0;       // ∫∫_E |g_t|^2 / ∫ ‖g_t‖^2
  double min_ratio = 0.0;
  double direct_ratio = 0.0;       // ∫_E |f|^2 / ‖f‖^2 by line quadrature
  double double_integral = 0.0;    // ∫∫_E |g_t|^2, Q-point midpoint rule in t
  double norm_integral = 0.0;      // ∫ ‖g_t‖^2 dt
  double direct = 0.0;             // ∫_{E ∩ [-T, T]} |f|^2
  double norm_sq = 0.0;            // ‖f‖^2 from the coefficient tables
  double T = 0.0;
  bool averaging_holds = true;     // global_ratio >= min_ratio - 1e-6
  bool support_ok = true;          // supp f̂ ⊂ ⋃ [n_i - 1/2, n_i + 1/2]
  double gamma = 0.0;
};

inline Theorem2Result theorem2_experiment(const BandFunction& f, const IntervalSet& E, int Q,
                                          std::optional<double> T = std::nullopt) {
  detail::require_unit_periodic(E, "theorem2_experiment");
  if (f.is_zero()) throw std::invalid_argument("theorem2_experiment: f is zero");
  Theorem2Result out;
  out.gamma = E.base_measure();
  out.support_ok = f.b() <= 2.0;
  const auto ts = midpoint_grid(Q);
  const auto cells = parallel_map(ts.size(), [&](std::size_t j) {
    const auto g = slice_at(f, ts[j]);
    return PeriodRatio{ts[j], g.norm_sq(), integral_over_set(g, E)};
  });
  std::vector<double> on_set, full;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& c : cells) {
    on_set.push_back(c.ratio);
    full.push_back(c.norm_sq);
    if (c.norm_sq < 1e-14) continue;
    out.per_t.push_back({c.t, c.norm_sq, c.ratio / c.norm_sq});
    out.min_ratio = std::min(out.min_ratio, c.ratio / c.norm_sq);
  }
  const double total = pairwise_sum(full);
  if (total <= 0.0) throw std::invalid_argument("theorem2_experiment: all periodizations vanish");
  out.double_integral = pairwise_sum(on_set) / Q;
  out.norm_integral = total / Q;
  out.global_ratio = pairwise_sum(on_set) / total;
  out.averaging_holds = out.global_ratio >= out.min_ratio - 1e-6;
  out.T = T.value_or(band_cutoff(f));
  out.direct = band_mass_on(f, E, out.T);
  out.norm_sq = norm_identity_check(f).lhs;
  out.direct_ratio = out.direct / out.norm_sq;
  return out;
}

/// True when every frequency of g is one of the centres.
inline bool spectrum_contained(const TrigPolynomial& g, const LacunarySequence& centres) {
  for (const auto& [n, c] : g.coefficients())
    if (!std::binary_search(centres.terms().begin(), centres.terms().end(), n)) return false;
  return true;
}

}  // namespace lacuna
