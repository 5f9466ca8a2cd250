#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace lacuna {

/// Pairwise (cascade) summation; the reduction tree depends only on the
/// length, so results are reproducible across runs and thread counts.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc{};
    for (const auto& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule of order n by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  // P_n(x) and P_n'(x) by the three-term recurrence
  const auto legendre = [n](double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    p = (n == 1) ? x : p1;
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
  };
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// The 16-point rule used for every composite integral in the library.
inline const GaussRule& gl16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename Fn>
auto integrate_panels(Fn&& f, double a, double b, std::size_t panels) {
  using R = decltype(f(a));
  const auto& rule = gl16();
  std::vector<R> partial(panels);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    R acc{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      acc += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    partial[p] = acc * (0.5 * h);
  }
  return pairwise_sum(partial);
}

/// Composite rule with at least `nodes_per_unit` nodes per unit length.
template <typename Fn>
auto integrate_density(Fn&& f, double a, double b, double nodes_per_unit) {
  const double len = b - a;
  const auto panels = static_cast<std::size_t>(
      std::max(1.0, std::ceil(len * nodes_per_unit / 16.0)));
  return integrate_panels(std::forward<Fn>(f), a, b, panels);
}

}  // namespace lacuna
