#pragma once

// Independent reference computations used by the tests. None of these share
// code paths with the library beyond its public value types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace oracle {

/// Adaptive Simpson quadrature with Richardson correction.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12, int depth = 40) {
  const auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
                       int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
  };
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(rec, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

/// Adaptive Simpson split into `pieces` equal subintervals (for oscillatory integrands).
inline double simpson_pieces(const std::function<double(double)>& f, double a, double b, int pieces, double tol = 1e-13) {
  double acc = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) acc += simpson(f, a + i * h, a + (i + 1) * h, tol / pieces);
  return acc;
}

/// R by listing every ordered pair and tallying differences in a map.
inline std::int64_t brute_force_parameter(const std::vector<std::int64_t>& terms) {
  std::map<std::int64_t, std::int64_t> tally;
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (i != j) ++tally[terms[i] - terms[j]];
  std::int64_t best = 0;
  for (const auto& [d, c] : tally) best = std::max(best, c);
  return best;
}

/// Direct evaluation Σ c_n e^{i2πnx} without phase reduction.
inline std::complex<double> eval(const lacuna::TrigPolynomial& g, double x) {
  std::complex<double> acc{};
  for (const auto& [n, c] : g.coefficients()) acc += c * std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * n * x));
  return acc;
}

/// ∫_0^1 |g|^4 as the mean over P equispaced points; exact (up to rounding)
/// once P exceeds twice the spectral spread.
inline double l4_sampled(const lacuna::TrigPolynomial& g, int P) {
  double acc = 0.0;
  for (int j = 0; j < P; ++j) acc += std::pow(std::norm(eval(g, static_cast<double>(j) / P)), 2);
  return acc / P;
}

/// ∫_{E ∩ [0,1)} |g|^2 by adaptive Simpson on every interval of E.
inline double mass_on_set(const lacuna::TrigPolynomial& g, const lacuna::IntervalSet& E) {
  double acc = 0.0;
  for (const auto& iv : E.pieces_in({0.0, 1.0})) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(64.0 * iv.length())));
    acc += simpson_pieces([&](double x) { return std::norm(eval(g, x)); }, iv.lo, iv.hi, pieces);
  }
  return acc;
}

}  // namespace oracle
