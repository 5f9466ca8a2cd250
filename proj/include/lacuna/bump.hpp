#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "lacuna/quadrature.hpp"

namespace lacuna {

namespace detail {

/// Unnormalised standard mollifier exp(-1/(1-y^2)) on (-1, 1).
inline double mollifier_raw(double y) {
  const double q = 1.0 - y * y;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

/// Tables for the normalised mollifier eta: its cumulative integral on a
/// cell grid over [-1, 1] and its Fourier transform on a uniform s-grid.
class MollifierTables {
 public:
  static constexpr int cells = 512;
  static constexpr double s_step = 1.0 / 64.0;
  static constexpr double s_max = 128.0;
  static constexpr int stencil = 12;

  static const MollifierTables& get() {
    static const MollifierTables tables;
    return tables;
  }

  double eta(double y) const { return mollifier_raw(y) / norm_; }

  /// ∫_{-1}^{s} eta.
  double cumulative(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double h = 2.0 / cells;
    const int c = std::min(cells - 1, static_cast<int>((s + 1.0) / h));
    const double left = -1.0 + c * h;
    return cumulative_[c] + local_integral(left, s);
  }

  /// Last argument covered by the interpolation stencil.
  static constexpr double s_covered = s_max - stencil * s_step;

  /// eta_hat(s) = ∫ eta(y) e^{i 2π s y} dy, real and even.
  ///
  /// Past the table |eta_hat| < 1e-14, and every caller multiplies it by a
  /// box factor below 1/(π·1000), so it is taken as 0 there.
  double eta_hat(double s) const {
    s = std::abs(s);
    if (s > s_covered) return 0.0;
    const double u = s / s_step;
    const int centre = static_cast<int>(std::floor(u));
    const int first = centre - stencil / 2 + 1;
    double acc = 0.0;
    for (int j = 0; j < stencil; ++j) {
      double basis = 1.0;
      for (int m = 0; m < stencil; ++m)
        if (m != j) basis *= (u - (first + m)) / static_cast<double>(j - m);
      acc += basis * table_at(first + j);
    }
    return acc;
  }

  /// Interpolation weights for fractional table offset `frac` in [0, 1).
  std::array<double, stencil> basis(double frac) const {
    std::array<double, stencil> w{};
    const double u = frac + (stencil / 2 - 1);
    for (int j = 0; j < stencil; ++j) {
      double b = 1.0;
      for (int m = 0; m < stencil; ++m)
        if (m != j) b *= (u - m) / static_cast<double>(j - m);
      w[j] = b;
    }
    return w;
  }

  /// eta_hat at table position u >= 0 (in units of s_step) with precomputed weights.
  double eta_hat_with(double u, const std::array<double, stencil>& w) const {
    const int first = static_cast<int>(std::floor(u)) - stencil / 2 + 1;
    double acc = 0.0;
    for (int j = 0; j < stencil; ++j) acc += w[j] * table_at(first + j);
    return acc;
  }

  /// Quadrature of 2∫_0^1 eta(y) cos(2π s y) dy; resolves >= 16 nodes per period.
  double eta_hat_direct(double s) const {
    const auto panels = static_cast<std::size_t>(std::max(128.0, std::ceil(2.0 * std::abs(s))));
    return 2.0 * integrate_panels(
                     [&](double y) { return eta(y) * std::cos(2.0 * std::numbers::pi * s * y); }, 0.0,
                     1.0, panels);
  }

  /// max |eta_hat(s')| over tabulated s' >= s (0 past the table end).
  double tail_envelope(double s) const {
    const auto i = static_cast<std::size_t>(std::max(0.0, std::floor(std::abs(s) / s_step)));
    return i < suffix_max_.size() ? suffix_max_[i] : suffix_max_.back();
  }

 private:
  MollifierTables() {
    const auto& rule = gauss_legendre(20);
    const double h = 2.0 / cells;
    double raw_total = 0.0;
    std::vector<double> raw(cells);
    for (int c = 0; c < cells; ++c) {
      const double a = -1.0 + c * h;
      double acc = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        acc += rule.weights[j] * mollifier_raw(a + 0.5 * h * (rule.nodes[j] + 1.0));
      raw[c] = acc * 0.5 * h;
    }
    raw_total = pairwise_sum(raw);
    norm_ = raw_total;
    cumulative_.resize(cells + 1, 0.0);
    for (int c = 0; c < cells; ++c) cumulative_[c + 1] = cumulative_[c] + raw[c] / norm_;

    const auto count = static_cast<std::size_t>(s_max / s_step) + 1;
    table_.resize(count);
    // 2∫_0^1 eta(y) cos(2π s y) dy on a fixed composite grid with eta cached
    const auto& gl = gl16();
    constexpr std::size_t panels = 128;
    std::vector<double> ys, ws;
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) / panels;
      for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const double y = mid + 0.5 * gl.nodes[j] / panels;
        ys.push_back(2.0 * std::numbers::pi * y);
        ws.push_back(2.0 * gl.weights[j] * 0.5 / panels * eta(y));
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double s = static_cast<double>(i) * s_step;
      double acc = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) acc += ws[j] * std::cos(s * ys[j]);
      table_[i] = acc;
    }
    suffix_max_.resize(count);
    double m = 0.0;
    for (std::size_t i = count; i-- > 0;) {
      m = std::max(m, std::abs(table_[i]));
      suffix_max_[i] = m;
    }
  }

  double local_integral(double a, double b) const {
    static const GaussRule rule = gauss_legendre(20);
    if (b <= a) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      acc += rule.weights[j] * mollifier_raw(0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j]);
    return acc * 0.5 * (b - a) / norm_;
  }

  double table_at(int i) const { return table_[static_cast<std::size_t>(std::abs(i))]; }

  double norm_ = 1.0;
  std::vector<double> cumulative_;
  std::vector<double> table_;
  std::vector<double> suffix_max_;
};

}  // namespace detail

/// The fixed plateau bump phi = chi_[-3/8, 3/8] * eta_delta.
///
/// phi is 1 on [-1/4, 1/4], vanishes outside (-1/2, 1/2), is even and takes
/// values in [0, 1]. Its inverse transform phi_check(x) = ∫ phi(ξ) e^{i2πxξ} dξ
/// factors as chi_check(x) * eta_check(delta x); the mollifier factor is
/// tabulated once by quadrature.
class BumpFunction {
 public:
  static constexpr double box_half_width = 3.0 / 8.0;
  static constexpr double plateau_half_width = 0.25;
  static constexpr double support_half_width = 0.5;

  explicit BumpFunction(double delta = 1.0 / 8.0) : delta_(delta) {
    if (!(delta > 0.0 && delta <= 1.0 / 8.0))
      throw std::invalid_argument("BumpFunction: delta must lie in (0, 1/8]");
  }

  double delta() const noexcept { return delta_; }

  double phi(double x) const {
    const auto& t = detail::MollifierTables::get();
    return std::clamp(t.cumulative((x + box_half_width) / delta_) -
                          t.cumulative((x - box_half_width) / delta_),
                      0.0, 1.0);
  }

  /// phi_check(x); real and even.
  double phi_check(double x) const {
    return box_check(x) * detail::MollifierTables::get().eta_hat(delta_ * x);
  }

  /// Inverse transform of phi_n(ξ) = e^{i2πnξ} phi(ξ), i.e. phi_check(x + n).
  std::complex<double> phi_check_n(std::int64_t n, double x) const {
    return {phi_check(x + static_cast<double>(n)), 0.0};
  }

  /// phi_check(z0 + j) for j = 0 .. out.size()-1.
  ///
  /// Consecutive arguments differ by 1, so with delta a multiple of the
  /// table step every point shares the same interpolation offset (per sign)
  /// and the box factor cycles with period 8.
  void phi_check_run(double z0, std::span<double> out) const {
    const auto& t = detail::MollifierTables::get();
    using T = detail::MollifierTables;
    const double steps = delta_ / T::s_step;
    if (steps != std::floor(steps)) {
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = phi_check(z0 + static_cast<double>(j));
      return;
    }
    std::array<double, 8> box_sin{};
    const double w = 2.0 * std::numbers::pi * box_half_width;
    for (int j = 0; j < 8; ++j) box_sin[j] = std::sin(w * (z0 + j));
    double cached_frac = -1.0;
    std::array<double, T::stencil> weights{};
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double z = z0 + static_cast<double>(j);
      const double u = std::abs(delta_ * z) / T::s_step;
      double eta;
      if (u * T::s_step > T::s_covered) {
        eta = 0.0;
      } else {
        const double frac = u - std::floor(u);
        if (std::abs(frac - cached_frac) > 1e-13) {
          weights = t.basis(frac);
          cached_frac = frac;
        }
        eta = t.eta_hat_with(u, weights);
      }
      const double box = std::abs(z) < 1e-6 ? box_check(z) : box_sin[j % 8] / (std::numbers::pi * z);
      out[j] = box * eta;
    }
  }

  /// Independent route: quadrature of 2∫_0^{1/2} phi(ξ) cos(2π x ξ) dξ with
  /// max(2^12, 64|x|) nodes.
  double phi_check_direct(double x) const {
    const double nodes = std::max(4096.0, 64.0 * std::abs(x));
    const auto panels = static_cast<std::size_t>(std::ceil(nodes / 16.0));
    return 2.0 * integrate_panels(
                     [&](double xi) { return phi(xi) * std::cos(2.0 * std::numbers::pi * x * xi); }, 0.0,
                     support_half_width, panels);
  }

  /// Bound on |phi_check(z')| for all |z'| >= |z| (uses 1/(π|z|) for the box factor).
  double decay_envelope(double z) const {
    z = std::abs(z);
    const double box = z > 1.0 ? 1.0 / (std::numbers::pi * z) : 0.75;
    return box * detail::MollifierTables::get().tail_envelope(delta_ * z);
  }

  /// Smallest integer radius beyond which |phi_check| stays below tol.
  double tail_radius(double tol) const {
    double z = 1.0;
    while (decay_envelope(z) > tol && z < 1e6) z += 1.0;
    return z;
  }

  /// sup over the given points of |phi_check(x)| (1 + x^2).
  double empirical_decay_constant(std::span<const double> xs) const {
    double c = 0.0;
    for (double x : xs) c = std::max(c, std::abs(phi_check(x)) * (1.0 + x * x));
    return c;
  }

 private:
  static double box_check(double x) {
    const double w = 2.0 * std::numbers::pi * box_half_width;  // sin(w x) / (π x)
    if (std::abs(x) < 1e-6) {
      const double u = w * x;
      return 2.0 * box_half_width * (1.0 - u * u / 6.0);
    }
    return std::sin(w * x) / (std::numbers::pi * x);
  }

  double delta_;
};

inline const BumpFunction& default_bump() {
  static const BumpFunction bump{};
  return bump;
}

}  // namespace lacuna
