#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

#include "lacuna/lacunary.hpp"
#include "lacuna/quadrature.hpp"
#include "lacuna/random.hpp"
#include "lacuna/sets.hpp"

namespace lacuna {

using cplx = std::complex<double>;

/// 1-periodic trigonometric polynomial g(x) = Σ c_n e^{i2πnx}.
/// Zero coefficients are never stored.
class TrigPolynomial {
 public:
  using Coefficients = std::map<std::int64_t, cplx>;

  TrigPolynomial() = default;
  explicit TrigPolynomial(const Coefficients& coeffs) {
    for (const auto& [n, c] : coeffs) set(n, c);
  }

  /// Coefficients `values[i]` on frequencies `spectrum[i]`.
  TrigPolynomial(const LacunarySequence& spectrum, const std::vector<cplx>& values) {
    if (spectrum.size() != values.size())
      throw std::invalid_argument("TrigPolynomial: spectrum and coefficient counts differ");
    for (std::size_t i = 0; i < values.size(); ++i) set(spectrum[i], values[i]);
  }

  void set(std::int64_t n, cplx c) {
    if (c == cplx{})
      coeffs_.erase(n);
    else
      coeffs_[n] = c;
  }

  cplx coefficient(std::int64_t n) const {
    const auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cplx{} : it->second;
  }

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  LacunarySequence spectrum() const {
    std::vector<std::int64_t> s;
    for (const auto& [n, c] : coeffs_) s.push_back(n);
    return LacunarySequence(std::move(s));
  }

  /// Σ|c_n|^2, which equals ∫_0^1 |g|^2 by Parseval.
  double norm_sq() const {
    std::vector<double> v;
    for (const auto& [n, c] : coeffs_) v.push_back(std::norm(c));
    return pairwise_sum(v);
  }

  cplx operator()(double x) const {
    x -= std::floor(x);
    cplx acc{};
    for (const auto& [n, c] : coeffs_) {
      const double nx = static_cast<double>(n) * x;
      const double phase = 2.0 * std::numbers::pi * (nx - std::round(nx));
      acc += c * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
  }

  /// g(x) e^{i2πmx}: every frequency shifted by m.
  TrigPolynomial modulated(std::int64_t m) const {
    TrigPolynomial out;
    for (const auto& [n, c] : coeffs_) out.coeffs_[n + m] = c;
    return out;
  }

  TrigPolynomial scaled(cplx s) const {
    TrigPolynomial out;
    for (const auto& [n, c] : coeffs_) out.set(n, s * c);
    return out;
  }

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  Coefficients coeffs_;
};

inline cplx evaluate(const TrigPolynomial& g, double x) { return g(x); }

/// Fourier coefficients h_n = Σ_{k-l=n} c_k conj(c_l) of |g|^2, by direct
/// pairwise products.
inline std::map<std::int64_t, cplx> autocorrelation(const TrigPolynomial& g) {
  std::map<std::int64_t, cplx> h;
  for (const auto& [k, ck] : g.coefficients())
    for (const auto& [l, cl] : g.coefficients()) h[k - l] += ck * std::conj(cl);
  return h;
}

/// ∫_0^1 |g|^4 = Σ_n |h_n|^2, evaluated on the Fourier side.
inline double l4_norm_4th_power(const TrigPolynomial& g) {
  std::vector<double> v;
  for (const auto& [n, hn] : autocorrelation(g)) v.push_back(std::norm(hn));
  return pairwise_sum(v);
}

struct Lemma1Check {
  double l4 = 0.0;
  double bound = 0.0;
  std::int64_t r_used = 0;
  bool holds = true;
};

/// ‖g‖_4 against (1 + R)^{1/4} ‖g‖_2, R the windowed parameter of spec g.
inline Lemma1Check lemma1_check(const TrigPolynomial& g) {
  Lemma1Check out;
  out.r_used = lacunarity_parameter(g.spectrum());
  if (g.is_zero()) return out;
  out.l4 = std::pow(l4_norm_4th_power(g), 0.25);
  out.bound = std::pow(1.0 + static_cast<double>(out.r_used), 0.25) * std::sqrt(g.norm_sq());
  out.holds = out.l4 <= out.bound + 1e-9 * out.bound;
  return out;
}

/// ∫_{E ∩ [0,1]} |g|^2 = Σ_n h_n ∫_{E ∩ [0,1]} e^{i2πnx} dx, exact up to rounding.
inline double integral_over_set(const TrigPolynomial& g, const IntervalSet& set) {
  const auto h = autocorrelation(g);
  std::vector<double> terms;
  terms.reserve(h.size());
  for (const auto& [n, hn] : h) {
    if (n < 0) continue;  // h_{-n} = conj(h_n); pair the terms
    const cplx term = hn * exponential_integral(set, n);
    terms.push_back(n == 0 ? term.real() : 2.0 * term.real());
  }
  return pairwise_sum(terms);
}

/// Coefficients drawn uniformly from the complex unit disc on `spectrum`.
inline TrigPolynomial random_polynomial(const LacunarySequence& spectrum, Rng& rng) {
  TrigPolynomial g;
  for (const auto n : spectrum.terms()) g.set(n, rng.unit_disc());
  return g;
}

}  // namespace lacuna
