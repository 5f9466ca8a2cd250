#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacuna/bump.hpp"
#include "lacuna/lacunary.hpp"
#include "lacuna/quadrature.hpp"
#include "lacuna/random.hpp"
#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace lacuna {

/// Frequency profile f̂ of one island, as a function of absolute frequency ξ.
using Profile = std::function<cplx(double)>;

/// One island of a band function: centre n_i and the local Fourier
/// coefficients c^{(k)}, |k| <= K, of f̂_{n_i} on [n_i - b/2, n_i + b/2]
/// taken relative to the centre:
///   f̂_{n_i}(ξ) = Σ_k c^{(k)} e^{i2πk(ξ - n_i)/b}.
struct Island {
  std::int64_t n = 0;
  std::vector<cplx> coeffs;  // index k + K
  double tail_mass = 0.0;    // estimate of Σ_{|k|>K} |c^{(k)}|^2
  Profile profile;           // exact f̂_{n_i} when known
};

struct CoefficientExtraction {
  std::vector<cplx> coeffs;  // index k + K
  double total_mass = 0.0;   // (1/b) ∫ |f̂|^2 over the outer interval
  double tail_mass = 0.0;    // total_mass - Σ_{|k|<=K} |c^{(k)}|^2
  double outside_fraction = 0.0;
};

/// c^{(k)} = (1/b) ∫_{n-b/2}^{n+b/2} f̂(ξ) e^{-i2πk(ξ-n)/b} dξ for |k| <= K.
///
/// Profiles carrying 1e-6 or more of their L^2 mass outside the quarter
/// interval [n - b/4, n + b/4] are rejected.
inline CoefficientExtraction coefficients_from_spectrum(const Profile& fhat, std::int64_t n, double b, int K) {
  if (!(b > 0.0)) throw std::invalid_argument("coefficients_from_spectrum: b must be positive");
  if (K < 0) throw std::invalid_argument("coefficients_from_spectrum: K must be >= 0");
  const double centre = static_cast<double>(n);
  const auto at = [&](double s) { return fhat(centre + s); };
  // segments split at ±b/4 so profile jumps sit on panel boundaries
  const double q = b / 4.0, h = b / 2.0;
  const std::size_t inner_panels = static_cast<std::size_t>(std::max(64, K));
  const std::size_t outer_panels = static_cast<std::size_t>(std::max(32, K / 2));
  const double inside = integrate_panels([&](double s) { return std::norm(at(s)); }, -q, q, inner_panels);
  const double outside = integrate_panels([&](double s) { return std::norm(at(s)); }, -h, -q, outer_panels) +
                         integrate_panels([&](double s) { return std::norm(at(s)); }, q, h, outer_panels);
  CoefficientExtraction out;
  out.coeffs.assign(2 * static_cast<std::size_t>(K) + 1, cplx{});
  const double mass = inside + outside;
  out.total_mass = mass / b;
  if (mass == 0.0) return out;
  out.outside_fraction = outside / mass;
  if (out.outside_fraction >= 1e-6)
    throw std::domain_error("coefficients_from_spectrum: profile has " + std::to_string(out.outside_fraction) +
                            " of its mass outside the quarter interval");
  for (int k = -K; k <= K; ++k) {
    const double w = -2.0 * std::numbers::pi * k / b;
    const auto integrand = [&](double s) { return at(s) * cplx(std::cos(w * s), std::sin(w * s)); };
    const cplx c = integrate_panels(integrand, -h, -q, outer_panels) + integrate_panels(integrand, -q, q, inner_panels) +
                   integrate_panels(integrand, q, h, outer_panels);
    out.coeffs[static_cast<std::size_t>(k + K)] = c / b;
  }
  double captured = 0.0;
  for (const auto& c : out.coeffs) captured += std::norm(c);
  out.tail_mass = std::max(0.0, out.total_mass - captured);
  return out;
}

/// Function on the line with supp f̂ ⊂ ⋃_i [n_i - b/4, n_i + b/4], stored
/// through per-island local Fourier coefficients.
class BandFunction {
 public:
  BandFunction() = default;

  BandFunction(double b, int K, std::vector<Island> islands) : b_(b), K_(K), islands_(std::move(islands)) {
    if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("BandFunction: b must be positive");
    if (K < 0) throw std::invalid_argument("BandFunction: K must be >= 0");
    const auto width = 2 * static_cast<std::size_t>(K) + 1;
    for (std::size_t i = 0; i < islands_.size(); ++i) {
      if (islands_[i].coeffs.size() != width)
        throw std::invalid_argument("BandFunction: island coefficient table must have 2K+1 entries");
      if (i > 0 && islands_[i].n <= islands_[i - 1].n)
        throw std::invalid_argument("BandFunction: island centres must be strictly increasing");
    }
    by_k_.assign(width * islands_.size(), cplx{});
    for (std::size_t i = 0; i < islands_.size(); ++i)
      for (std::size_t k = 0; k < width; ++k) by_k_[k * islands_.size() + i] = islands_[i].coeffs[k];
  }

  double b() const noexcept { return b_; }
  int K() const noexcept { return K_; }
  const std::vector<Island>& islands() const noexcept { return islands_; }
  bool is_zero() const {
    return std::all_of(by_k_.begin(), by_k_.end(), [](const cplx& c) { return c == cplx{}; });
  }

  LacunarySequence centres() const {
    std::vector<std::int64_t> c;
    for (const auto& i : islands_) c.push_back(i.n);
    return LacunarySequence(std::move(c));
  }

  cplx coefficient(std::size_t island, int k) const {
    if (std::abs(k) > K_) return {};
    return by_k_[static_cast<std::size_t>(k + K_) * islands_.size() + island];
  }

  /// Coefficients of island i for slice k, laid out contiguously over i.
  std::span<const cplx> slice_coefficients(int k) const {
    return {by_k_.data() + static_cast<std::size_t>(k + K_) * islands_.size(), islands_.size()};
  }

  double tail_mass() const {
    double t = 0.0;
    for (const auto& i : islands_) t += i.tail_mass;
    return t;
  }

  /// f̂(ξ): exact profiles where stored, else the truncated series times
  /// phi((ξ - n_i)/b), which is the transform synthesised by `synthesize`.
  cplx spectrum_at(double xi) const {
    cplx acc{};
    const auto& bump = default_bump();
    for (const auto& isl : islands_) {
      const double s = xi - static_cast<double>(isl.n);
      if (std::abs(s) >= 0.5 * b_) continue;
      if (isl.profile) {
        acc += isl.profile(xi);
        continue;
      }
      const double w = bump.phi(s / b_);
      if (w == 0.0) continue;
      cplx series{};
      for (int k = -K_; k <= K_; ++k) {
        const double ph = 2.0 * std::numbers::pi * k * s / b_;
        series += isl.coeffs[static_cast<std::size_t>(k + K_)] * cplx(std::cos(ph), std::sin(ph));
      }
      acc += w * series;
    }
    return acc;
  }

  BandFunction scaled(cplx lambda) const {
    auto isl = islands_;
    for (auto& i : isl) {
      for (auto& c : i.coeffs) c *= lambda;
      i.tail_mass *= std::norm(lambda);
      if (i.profile) i.profile = [p = i.profile, lambda](double xi) { return lambda * p(xi); };
    }
    return BandFunction(b_, K_, std::move(isl));
  }

 private:
  double b_ = 1.0;
  int K_ = 0;
  std::vector<Island> islands_;
  std::vector<cplx> by_k_;  // (k + K) * islands + i
};

// ---------------------------------------------------------------------------
// Profiles

/// χ_[n - w, n + w] with w = b/4 by default.
inline Profile box_profile(std::int64_t n, double half_width) {
  const double c = static_cast<double>(n);
  return [c, half_width](double xi) { return std::abs(xi - c) <= half_width ? cplx{1.0} : cplx{}; };
}

/// (1 - |ξ - n| / w)_+.
inline Profile triangle_profile(std::int64_t n, double half_width) {
  const double c = static_cast<double>(n);
  return [c, half_width](double xi) { return cplx{std::max(0.0, 1.0 - std::abs(xi - c) / half_width)}; };
}

/// (1 - u^2)^4 Σ_{j<modes} a_j e^{iπju}, u = (ξ - n)/w, a_j uniform on the unit disc.
inline Profile smooth_random_profile(std::int64_t n, double half_width, Rng& rng, int modes = 4) {
  std::vector<cplx> a(static_cast<std::size_t>(modes));
  for (auto& v : a) v = rng.unit_disc();
  const double c = static_cast<double>(n);
  return [c, half_width, a](double xi) {
    const double u = (xi - c) / half_width;
    if (std::abs(u) >= 1.0) return cplx{};
    const double env = std::pow(1.0 - u * u, 4);
    cplx acc{};
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double ph = std::numbers::pi * static_cast<double>(j) * u;
      acc += a[j] * cplx(std::cos(ph), std::sin(ph));
    }
    return env * acc;
  };
}

/// Band function from per-island profiles (absolute frequency).
inline BandFunction make_band(const LacunarySequence& centres, double b, int K, const std::vector<Profile>& profiles) {
  if (profiles.size() != centres.size()) throw std::invalid_argument("make_band: one profile per centre");
  std::vector<Island> islands;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    auto ext = coefficients_from_spectrum(profiles[i], centres[i], b, K);
    islands.push_back({centres[i], std::move(ext.coeffs), ext.tail_mass, profiles[i]});
  }
  return BandFunction(b, K, std::move(islands));
}

/// Splits a global f̂ over the islands; frequencies covered by several quarter
/// intervals go to the lowest-indexed island.
inline BandFunction split_global_profile(const Profile& fhat, const LacunarySequence& centres, double b, int K) {
  std::vector<Profile> parts;
  const auto terms = centres.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    parts.push_back([fhat, terms, i, b](double xi) {
      const auto owns = [&](std::size_t j) { return std::abs(xi - static_cast<double>(terms[j])) <= b / 4.0; };
      if (!owns(i)) return cplx{};
      for (std::size_t j = 0; j < i; ++j)
        if (owns(j)) return cplx{};
      return fhat(xi);
    });
  }
  return make_band(centres, b, K, parts);
}

/// Box-profile band function: f̂ = χ_[n_i - b/4, n_i + b/4] scaled by amplitudes.
inline BandFunction box_band(const LacunarySequence& centres, double b, int K, const std::vector<cplx>& amplitudes = {}) {
  std::vector<Profile> p;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    const cplx a = amplitudes.empty() ? cplx{1.0} : amplitudes.at(i);
    p.push_back([inner = box_profile(centres[i], b / 4.0), a](double xi) { return a * inner(xi); });
  }
  return make_band(centres, b, K, p);
}

inline BandFunction random_smooth_band(const LacunarySequence& centres, double b, int K, Rng& rng) {
  std::vector<Profile> p;
  for (const auto n : centres.terms()) p.push_back(smooth_random_profile(n, b / 4.0, rng));
  return make_band(centres, b, K, p);
}

// ---------------------------------------------------------------------------
// Structure checks

struct CloseGuard {
  std::int64_t close_pairs = 0;  // ordered pairs with 0 < |n_i - n_j| <= b/2
  std::int64_t r_param = 0;
  bool ok = true;
};

inline CloseGuard close_pair_guard(const BandFunction& f) {
  CloseGuard g;
  const auto c = f.centres();
  g.r_param = lacunarity_parameter(c);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j && std::abs(static_cast<double>(c[i] - c[j])) <= f.b() / 2.0) ++g.close_pairs;
  g.ok = static_cast<double>(g.close_pairs) <= static_cast<double>(g.r_param) * f.b();
  return g;
}

/// Relative L^2 mass of each island's truncated series outside its quarter
/// interval (within the outer interval). Returns the maximum over islands.
inline double quarter_support_residual(const BandFunction& f) {
  double worst = 0.0;
  const double b = f.b();
  const int K = f.K();
  for (const auto& isl : f.islands()) {
    const auto series = [&](double s) {
      cplx acc{};
      for (int k = -K; k <= K; ++k) {
        const double ph = 2.0 * std::numbers::pi * k * s / b;
        acc += isl.coeffs[static_cast<std::size_t>(k + K)] * cplx(std::cos(ph), std::sin(ph));
      }
      return std::norm(acc);
    };
    double total = 0.0;
    for (const auto& c : isl.coeffs) total += std::norm(c);
    total *= b;
    if (total == 0.0) continue;
    const auto panels = static_cast<std::size_t>(std::max(32, K));
    const double out = integrate_panels(series, -b / 2.0, -b / 4.0, panels) + integrate_panels(series, b / 4.0, b / 2.0, panels);
    worst = std::max(worst, out / total);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Slices, synthesis, norm identity

/// g_k(x) = Σ_i c_{n_i}^{(k)} e^{i2πn_i x}.
inline TrigPolynomial slice_gk(const BandFunction& f, int k) {
  if (std::abs(k) > f.K()) throw std::out_of_range("slice_gk: |k| exceeds K");
  TrigPolynomial g;
  const auto c = f.slice_coefficients(k);
  for (std::size_t i = 0; i < c.size(); ++i) g.set(f.islands()[i].n, c[i]);
  return g;
}

struct SynthesisValue {
  cplx value;
  double tail_bound = 0.0;  // bound on the omitted |k| > K terms
};

namespace detail {

/// sup_x |phi_check(x)| (1 + x^2) over a fine grid, for tail bounds.
inline double global_decay_constant() {
  static const double c = [] {
    std::vector<double> xs;
    for (double x = 0.0; x <= 1100.0; x += 0.125) xs.push_back(x);
    return default_bump().empirical_decay_constant(xs);
  }();
  return c;
}

/// Terms with |bx + k| beyond this radius are below 1e-18 and skipped.
inline double synthesis_radius() {
  static const double r = default_bump().tail_radius(1e-18);
  return r;
}

}  // namespace detail

/// f(x) = b Σ_{|k|<=K} g_k(x) phi_check(bx + k).
///
/// The tail bound covers the truncated |k| > K terms via Cauchy-Schwarz,
/// |g_k(x)|^2 <= N Σ_i |c_i^{(k)}|^2 and |phi_check(z)| <= C_phi / (1 + z^2).
inline SynthesisValue synthesize(const BandFunction& f, double x) {
  const std::size_t N = f.islands().size();
  SynthesisValue out{};
  if (N == 0) return out;
  const double b = f.b();
  const int K = f.K();
  const double z = b * x;
  const double radius = detail::synthesis_radius();
  const int k_lo = std::max(-K, static_cast<int>(std::floor(-z - radius)));
  const int k_hi = std::min(K, static_cast<int>(std::ceil(-z + radius)));
  std::vector<cplx> waves(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double nx = static_cast<double>(f.islands()[i].n) * x;
    const double ph = 2.0 * std::numbers::pi * (nx - std::round(nx));
    waves[i] = cplx(std::cos(ph), std::sin(ph));
  }
  if (k_lo <= k_hi) {
    std::vector<double> phis(static_cast<std::size_t>(k_hi - k_lo + 1));
    default_bump().phi_check_run(z + k_lo, phis);
    std::vector<cplx> terms(phis.size());
    for (int k = k_lo; k <= k_hi; ++k) {
      const auto c = f.slice_coefficients(k);
      cplx g{};
      for (std::size_t i = 0; i < N; ++i) g += c[i] * waves[i];
      terms[static_cast<std::size_t>(k - k_lo)] = g * phis[static_cast<std::size_t>(k - k_lo)];
    }
    out.value = b * pairwise_sum(terms);
  }
  const double tail = f.tail_mass();
  if (tail > 0.0) {
    // Σ_{|k|>K} (1 + (z + k)^2)^{-2}, summed directly then closed by an integral
    double s = 0.0;
    constexpr int span = 4096;
    for (int j = 1; j <= span; ++j) {
      for (double zk : {z + K + j, z - K - j}) s += 1.0 / ((1.0 + zk * zk) * (1.0 + zk * zk));
    }
    const double far = std::max(1.0, static_cast<double>(K + span) - std::abs(z));
    s += 2.0 / (3.0 * far * far * far);
    out.tail_bound = b * std::sqrt(static_cast<double>(N) * tail) * detail::global_decay_constant() * std::sqrt(s);
  }
  return out;
}

struct NormIdentity {
  double lhs = 0.0;  // Σ_i b Σ_k |c_{n_i}^{(k)}|^2
  double rhs = 0.0;  // b Σ_k ‖g_k‖_2^2
};

inline NormIdentity norm_identity_check(const BandFunction& f) {
  NormIdentity out;
  std::vector<double> per_island;
  for (const auto& isl : f.islands()) {
    std::vector<double> v;
    for (const auto& c : isl.coeffs) v.push_back(std::norm(c));
    per_island.push_back(f.b() * pairwise_sum(v));
  }
  out.lhs = pairwise_sum(per_island);
  std::vector<double> per_slice;
  for (int k = -f.K(); k <= f.K(); ++k) per_slice.push_back(slice_gk(f, k).norm_sq());
  out.rhs = f.b() * pairwise_sum(per_slice);
  return out;
}

// ---------------------------------------------------------------------------
// Integration over periodic sets on the line

/// Nodes per unit length that resolve an integrand of bandwidth W with at
/// least 16 nodes per period, never below 128.
inline double nodes_per_unit(double bandwidth) { return std::max(128.0, 16.0 * bandwidth); }

/// ∫_{region ∩ [-T, T]} f, decomposed over the cells [n/b, (n+1)/b].
template <typename Fn>
double integrate_on_line(const IntervalSet& region, double T, double b, double density, Fn&& f) {
  std::vector<double> cells;
  const double cell = 1.0 / b;
  const auto first = static_cast<std::int64_t>(std::floor(-T * b));
  const auto last = static_cast<std::int64_t>(std::ceil(T * b));
  for (std::int64_t n = first; n < last; ++n) {
    const Interval window{std::max(-T, static_cast<double>(n) * cell), std::min(T, static_cast<double>(n + 1) * cell)};
    if (window.empty()) continue;
    double acc = 0.0;
    for (const auto& piece : region.pieces_in(window)) acc += integrate_density(f, piece.lo, piece.hi, density);
    cells.push_back(acc);
  }
  return pairwise_sum(cells);
}

/// ε as used by the sparsity hypothesis: sup |E^c ∩ I|/|I| over |I| = 1/b,
/// multiplied by b when b > 1 (the ε/b branch).
inline double effective_sparsity(const IntervalSet& E, double b) {
  const double raw = complement_sparsity(E, b);
  return b > 1.0 ? raw * b : raw;
}

/// Cutoff T placing |phi_check(bx + k)| below 1e-9 for |x| > T.
inline double default_cutoff(double max_abs_k, double b) {
  static const double z = default_bump().tail_radius(1e-9);
  return (max_abs_k + z) / b;
}

inline double spectral_width(const TrigPolynomial& g) {
  if (g.is_zero()) return 0.0;
  return static_cast<double>(g.coefficients().rbegin()->first - g.coefficients().begin()->first);
}

// ---------------------------------------------------------------------------
// Lemma 2 / Lemma 3 ratios

struct LemmaRatio {
  double lhs = 0.0;
  double eps = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;  // an empirical sample of C(R)
  double T = 0.0;
};

namespace detail {

inline LemmaRatio finish_ratio(double lhs, double eps, double norm_sq, double T, double scale) {
  LemmaRatio r{lhs, eps, norm_sq, 0.0, T};
  if (eps == 0.0) {
    if (lhs > 1e-14 * std::max(1.0, norm_sq))
      throw std::runtime_error("lemma ratio: nonzero complement integral on a set with empty complement");
    return r;
  }
  if (norm_sq > 0.0) r.ratio = lhs * scale / (std::sqrt(eps) * norm_sq);
  return r;
}

}  // namespace detail

/// b ∫_{E^c ∩ [-T,T]} |g|^2 |phi_check(bx + k)|^2 and its ratio to √ε ‖g‖_2^2.
inline LemmaRatio lemma2_ratio(const TrigPolynomial& g, int k, double b, const IntervalSet& E,
                               std::optional<double> T = std::nullopt) {
  if (!E.is_periodic()) throw std::invalid_argument("lemma2_ratio: E must be periodic");
  const double cutoff = T.value_or(default_cutoff(std::abs(k), b));
  const IntervalSet Ec = complement_within(E);
  const auto& bump = default_bump();
  const double density = nodes_per_unit(spectral_width(g) + b);
  const double lhs = b * integrate_on_line(Ec, cutoff, b, density, [&](double x) {
    const double p = bump.phi_check(b * x + k);
    return std::norm(g(x)) * p * p;
  });
  return detail::finish_ratio(lhs, effective_sparsity(E, b), g.norm_sq(), cutoff, 1.0);
}

/// b ∫_{E^c ∩ [-T,T]} |g|^2 |phi_check(bx + k) phi_check(bx + l)|, scaled by |k - l|^2.
inline LemmaRatio lemma3_ratio(const TrigPolynomial& g, int k, int l, double b, const IntervalSet& E,
                               std::optional<double> T = std::nullopt) {
  if (k == l) throw std::invalid_argument("lemma3_ratio: k and l must differ");
  if (!E.is_periodic()) throw std::invalid_argument("lemma3_ratio: E must be periodic");
  const double cutoff = T.value_or(default_cutoff(std::max(std::abs(k), std::abs(l)), b));
  const IntervalSet Ec = complement_within(E);
  const auto& bump = default_bump();
  const double density = nodes_per_unit(spectral_width(g) + b);
  const double lhs = b * integrate_on_line(Ec, cutoff, b, density, [&](double x) {
    const double z = b * x;
    return std::norm(g(x)) * std::abs(bump.phi_check(z + k) * bump.phi_check(z + l));
  });
  const double d = static_cast<double>(k - l);
  return detail::finish_ratio(lhs, effective_sparsity(E, b), g.norm_sq(), cutoff, d * d);
}

// ---------------------------------------------------------------------------
// Theorem 1 experiment

struct Theorem1Result {
  double b = 0.0;
  double eps = 0.0;  // effective sparsity (ε/b branch applied for b > 1)
  int K = 0;
  double T = 0.0;
  double mass_out = 0.0;
  double norm_sq = 0.0;
  double ratio = 0.0;
  double concentration = 1.0;  // 1 - ratio
  bool half_threshold_met = true;
  bool guard_ok = true;
  std::int64_t r_param = 0;
};

/// Cutoff beyond which the synthesised f is below 1e-9 relative: |bx| > K + Z.
inline double band_cutoff(const BandFunction& f) { return default_cutoff(f.K(), f.b()); }

inline double band_width(const BandFunction& f) {
  const auto c = f.centres();
  return c.empty() ? 0.0 : static_cast<double>(c.terms().back() - c.terms().front()) + f.b();
}

/// ∫_{region ∩ [-T,T]} |f|^2 by quadrature of the synthesis formula.
inline double band_mass_on(const BandFunction& f, const IntervalSet& region, double T) {
  return integrate_on_line(region, T, f.b(), nodes_per_unit(band_width(f)),
                           [&](double x) { return std::norm(synthesize(f, x).value); });
}

inline Theorem1Result theorem1_experiment(const BandFunction& f, const IntervalSet& E,
                                          std::optional<double> T = std::nullopt) {
  if (!E.is_periodic()) throw std::invalid_argument("theorem1_experiment: E must be periodic");
  if (f.is_zero()) throw std::invalid_argument("theorem1_experiment: f is zero");
  Theorem1Result r;
  r.b = f.b();
  r.K = f.K();
  r.T = T.value_or(band_cutoff(f));
  r.eps = effective_sparsity(E, f.b());
  const auto guard = close_pair_guard(f);
  r.guard_ok = guard.ok;
  r.r_param = guard.r_param;
  r.norm_sq = norm_identity_check(f).lhs;
  r.mass_out = band_mass_on(f, complement_within(E), r.T);
  r.ratio = r.mass_out / r.norm_sq;
  r.concentration = 1.0 - r.ratio;
  r.half_threshold_met = r.concentration >= 0.5;
  return r;
}

}  // namespace lacuna
