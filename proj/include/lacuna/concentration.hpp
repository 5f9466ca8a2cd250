#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "lacuna/lacunary.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/random.hpp"
#include "lacuna/sets.hpp"
#include "lacuna/trigpoly.hpp"

namespace lacuna {

using ComplexMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

/// M_ij = ∫_{E ∩ [0,1]} e^{i2π(n_i - n_j)x} dx for a finite spectrum.
struct ConcentrationProblem {
  LacunarySequence spectrum;
  IntervalSet set;
  ComplexMatrix gram;
};

/// Upper triangle from the closed-form exponential integrals, mirrored, so the
/// matrix is exactly Hermitian.
inline ConcentrationProblem build_gram(const LacunarySequence& spectrum, const IntervalSet& E) {
  if (spectrum.size() == 0) throw std::invalid_argument("build_gram: empty spectrum");
  if (!E.is_periodic() || E.period() != 1.0) throw std::invalid_argument("build_gram: E must be 1-periodic");
  const auto N = static_cast<Eigen::Index>(spectrum.size());
  ComplexMatrix M(N, N);
  std::map<std::int64_t, cplx> cache;
  const auto entry = [&](std::int64_t d) {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, exponential_integral(E, d)).first;
    return it->second;
  };
  const double gamma = E.base_measure();
  for (Eigen::Index i = 0; i < N; ++i) {
    M(i, i) = cplx{gamma, 0.0};
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const cplx v = entry(spectrum[static_cast<std::size_t>(i)] - spectrum[static_cast<std::size_t>(j)]);
      M(i, j) = v;
      M(j, i) = std::conj(v);
    }
  }
  return {spectrum, E, std::move(M)};
}

struct SharpConstant {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  ComplexVector minimizer;     // unit eigenvector, largest entry real positive
  double residual = 0.0;       // ‖Mv - λv‖
  double verification = 0.0;   // ∫_E |g|^2 for g with coefficients conj(v)
  std::vector<double> eigenvalues;
};

/// Minimiser polynomial: Σ_i conj(v_i) e^{i2πn_i x}, whose ∫_E |·|^2 is v^* M v.
inline TrigPolynomial minimizer_polynomial(const ConcentrationProblem& p, const ComplexVector& v) {
  TrigPolynomial g;
  for (Eigen::Index i = 0; i < v.size(); ++i) g.set(p.spectrum[static_cast<std::size_t>(i)], std::conj(v(i)));
  return g;
}

inline SharpConstant sharp_constant(const ConcentrationProblem& p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(p.gram);
  if (solver.info() != Eigen::Success) throw std::runtime_error("sharp_constant: eigensolver did not converge");
  SharpConstant out;
  const auto& vals = solver.eigenvalues();
  out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  out.lambda_min = vals(0);
  out.lambda_max = vals(vals.size() - 1);
  ComplexVector v = solver.eigenvectors().col(0);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::conj(v(big)) / std::abs(v(big));
  v(big) = cplx{v(big).real(), 0.0};
  out.minimizer = v;
  out.residual = (p.gram * v - out.lambda_min * v).norm();
  if (out.residual > 1e-10)
    throw std::runtime_error("sharp_constant: eigen residual " + std::to_string(out.residual) + " exceeds 1e-10");
  out.verification = integral_over_set(minimizer_polynomial(p, v), p.set);
  return out;
}

// ---------------------------------------------------------------------------
// Set shapes of prescribed measure γ in [0, 1)

enum class SetShape { interval, holes, random };

inline std::string to_string(SetShape s) {
  switch (s) {
    case SetShape::interval: return "interval";
    case SetShape::holes: return "holes";
    case SetShape::random: return "random";
  }
  return "?";
}

inline SetShape parse_set_shape(const std::string& s) {
  if (s == "interval") return SetShape::interval;
  if (s == "holes") return SetShape::holes;
  if (s == "random") return SetShape::random;
  throw std::invalid_argument("unknown set shape '" + s + "'");
}

/// interval: [0, γ); holes: 8 equal gaps of total 1 - γ; random: 6 pieces at
/// random positions with random lengths summing to γ.
inline IntervalSet shaped_set(SetShape shape, double gamma, Rng& rng) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("shaped_set: gamma must lie in (0, 1]");
  if (gamma == 1.0) return IntervalSet::periodic({{0.0, 1.0}});
  switch (shape) {
    case SetShape::interval: return IntervalSet::periodic({{0.0, gamma}});
    case SetShape::holes: return IntervalSet::holes(1.0 - gamma, 8);
    case SetShape::random: {
      // Split [0,1) into 6 random cells and keep a γ-fraction of each.
      constexpr int pieces = 6;
      std::vector<double> cuts{0.0, 1.0};
      for (int j = 1; j < pieces; ++j) cuts.push_back(rng.uniform());
      std::sort(cuts.begin(), cuts.end());
      const double shift = rng.uniform();
      std::vector<Interval> v;
      for (int j = 0; j < pieces; ++j) {
        const double len = (cuts[j + 1] - cuts[j]) * gamma;
        const double start = cuts[j] + rng.uniform() * (cuts[j + 1] - cuts[j] - len);
        v.push_back({start + shift, start + len + shift});
      }
      return IntervalSet::periodic(std::move(v));
    }
  }
  throw std::logic_error("shaped_set: unreachable");
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepCell {
  double gamma = 1.0;
  std::int64_t R = 1;
  std::size_t N = 1;
  SetShape shape = SetShape::interval;
  std::uint64_t seed = 0;
};

struct ConstantSample {
  SweepCell cell;
  std::string set_id;
  std::string spectrum_id;
  std::optional<double> lambda_min;  // empty when the cell is infeasible
  std::string error;
};

struct EmpiricalConstantReport {
  std::string label;                         // which constant is probed
  std::vector<ConstantSample> samples;       // in cell order
  std::map<std::pair<double, std::int64_t>, double> envelope;  // min λ per (γ, R)
};

/// Spectrum of size N with windowed parameter exactly R drawn from [0, 64 N^2].
inline std::optional<LacunarySequence> sweep_spectrum(std::int64_t R, std::size_t N, Rng& rng) {
  if (N == 1) return LacunarySequence(std::vector<std::int64_t>{0});
  const auto range = static_cast<std::int64_t>(64 * N * N);
  return random_with_parameter(R, N, rng, range);
}

inline ConstantSample run_cell(const SweepCell& cell) {
  ConstantSample s{cell, {}, {}, std::nullopt, {}};
  Rng spec_rng(derive_seed(cell.seed, 0));
  Rng set_rng(derive_seed(cell.seed, 1));
  s.spectrum_id = "R" + std::to_string(cell.R) + "-N" + std::to_string(cell.N) + "-s" + std::to_string(cell.seed);
  s.set_id = to_string(cell.shape) + "-s" + std::to_string(cell.seed);
  try {
    const auto spectrum = sweep_spectrum(cell.R, cell.N, spec_rng);
    if (!spectrum) {
      s.error = "infeasible: no spectrum with R=" + std::to_string(cell.R) + " and N=" + std::to_string(cell.N);
      return s;
    }
    const auto E = shaped_set(cell.shape, cell.gamma, set_rng);
    s.lambda_min = sharp_constant(build_gram(*spectrum, E)).lambda_min;
  } catch (const std::exception& e) {
    s.error = e.what();
  }
  return s;
}

/// λ_min over every cell, evaluated in parallel and reported in cell order.
inline EmpiricalConstantReport constant_sweep(const std::vector<SweepCell>& cells, std::string label = "C(gamma,R)") {
  if (cells.empty()) throw std::invalid_argument("constant_sweep: empty grid");
  EmpiricalConstantReport report;
  report.label = std::move(label);
  report.samples = parallel_map(cells.size(), [&](std::size_t i) { return run_cell(cells[i]); });
  for (const auto& s : report.samples) {
    if (!s.lambda_min) continue;
    const auto key = std::make_pair(s.cell.gamma, s.cell.R);
    const auto it = report.envelope.find(key);
    if (it == report.envelope.end() || *s.lambda_min < it->second) report.envelope[key] = *s.lambda_min;
  }
  return report;
}

/// Full Cartesian grid; seeds derived per cell from the master seed.
inline std::vector<SweepCell> sweep_grid(const std::vector<double>& gammas, const std::vector<std::int64_t>& Rs,
                                         const std::vector<std::size_t>& Ns, const std::vector<SetShape>& shapes,
                                         std::size_t seeds_per_cell, std::uint64_t master_seed) {
  std::vector<SweepCell> cells;
  std::uint64_t index = 0;
  for (const double g : gammas)
    for (const auto R : Rs)
      for (const auto N : Ns)
        for (const auto shape : shapes)
          for (std::size_t s = 0; s < seeds_per_cell; ++s) cells.push_back({g, R, N, shape, derive_seed(master_seed, index++)});
  return cells;
}

}  // namespace lacuna
