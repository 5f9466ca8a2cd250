#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "lacuna/periodize.hpp"
#include "lacuna/random.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using lacuna::BandFunction;
using lacuna::IntervalSet;
using lacuna::LacunarySequence;
using cplx = std::complex<double>;
using Terms = std::vector<std::int64_t>;

namespace {

/// f̂(ξ) = (1 - 2|ξ|)_+, an island of half-width 1/2 (b = 2).
const BandFunction& triangle(int K) {
  static std::map<int, BandFunction> cache;
  auto it = cache.find(K);
  if (it == cache.end())
    it = cache.emplace(K, lacuna::make_band(LacunarySequence(Terms{0}), 2.0, K, {lacuna::triangle_profile(0, 0.5)}))
             .first;
  return it->second;
}

BandFunction zero_band() {
  lacuna::Island isl;
  isl.n = 0;
  isl.coeffs.assign(3, cplx{});
  return BandFunction(2.0, 1, {isl});
}

}  // namespace

TEST_CASE("slice examples", "[periodize]") {
  const auto& f = triangle(64);
  const auto g = lacuna::slice_at(f, 0.2);
  CHECK(g.size() == 1);
  CHECK_THAT(g.coefficient(0).real(), WithinAbs(0.6, 1e-15));
  CHECK(g.coefficient(-1) == cplx{});
  for (double t : {-0.5, 0.5}) {
    const auto edge = lacuna::slice_at(f, t);
    CHECK(edge.coefficient(0) == cplx{});
    CHECK(edge.coefficient(t > 0 ? 1 : -1) == cplx{});
  }
  CHECK(lacuna::slice_at(zero_band(), 0.1).is_zero());
  CHECK_THROWS_AS(lacuna::slice_at(f, 0.6), std::invalid_argument);
}

TEST_CASE("slice coefficients sample the spectrum on the shifted lattice", "[periodize][property]") {
  lacuna::Rng rng(13);
  const LacunarySequence centres(Terms{0, 3, 7, 12});
  const auto f = lacuna::random_smooth_band(centres, 2.0, 32, rng);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = rng.uniform(-0.5, 0.5);
    const auto g = lacuna::slice_at(f, t);
    CHECK(lacuna::spectrum_contained(g, centres));
    for (const auto n : centres.terms()) REQUIRE(std::abs(g.coefficient(n) - f.spectrum_at(n + t)) < 1e-12);
  }
}

TEST_CASE("direct periodization: Poisson sum at t = 0", "[periodize]") {
  // f = F^{-1}(triangle) = 2 sin^2(πx/2)/(πx)^2 is positive with a 1/x^2 tail, so
  // the partial sum to M misses about 4/(π^2 M) of the limit value 1.
  const auto& f = triangle(1024);
  const int M = 200;
  for (double x : {0.0, 0.3, 0.77}) {
    const auto d = lacuna::direct_periodization(f, 0.0, x, M);
    const double tail = 4.0 / (std::numbers::pi * std::numbers::pi * (M - 1));
    CHECK(std::abs(d.value - 1.0) <= tail);
    CHECK(d.value.real() < 1.0);
    CHECK(std::abs(d.value.imag()) < 1e-9);
  }
  const auto zero = lacuna::direct_periodization(zero_band(), 0.0, 0.4, 50);
  CHECK(zero.value == cplx{});
}

TEST_CASE("direct periodization agrees with the spectral slice", "[periodize]") {
  const auto& f = triangle(1024);
  const auto d = lacuna::direct_periodization(f, 0.2, 0.3, 500);
  const auto s = lacuna::slice_at(f, 0.2)(0.3);
  CHECK_THAT(std::abs(d.value), WithinAbs(0.6, 1e-3));
  CHECK(std::abs(d.value - s) < 1e-3);
  CHECK_THAT(std::arg(d.value), WithinAbs(std::arg(s), 2e-3));

  lacuna::Rng rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    const double t = rng.uniform(-0.5, 0.5), x = rng.uniform(-2.0, 2.0);
    REQUIRE(std::abs(lacuna::direct_periodization(f, t, x, 500).value - lacuna::slice_at(f, t)(x)) < 1e-3);
  }
}

TEST_CASE("midpoint grid", "[periodize]") {
  const auto ts = lacuna::midpoint_grid(4);
  REQUIRE(ts.size() == 4);
  CHECK(ts.front() == -0.375);
  CHECK(ts.back() == 0.375);
  CHECK_THROWS_AS(lacuna::midpoint_grid(0), std::invalid_argument);
}

TEST_CASE("averaged Plancherel", "[periodize]") {
  const auto& f = triangle(256);
  const auto full = lacuna::averaged_plancherel(f, IntervalSet::periodic({{0, 1}}), 256);
  CHECK_THAT(full.double_integral, WithinRel(1.0 / 3.0, 1e-4));
  CHECK_THAT(full.direct, WithinRel(1.0 / 3.0, 1e-4));
  CHECK(full.double_error < 1e-4);

  const auto half = lacuna::averaged_plancherel(f, IntervalSet::periodic({{0, 0.5}}), 256);
  CHECK_THAT(half.double_integral, WithinRel(half.direct, 1e-4));

  const auto zero = lacuna::averaged_plancherel(zero_band(), IntervalSet::periodic({{0, 1}}), 16);
  CHECK(zero.double_integral == 0.0);
  CHECK(zero.direct == 0.0);

  CHECK_THROWS_AS(lacuna::averaged_plancherel(f, IntervalSet::finite({{0, 1}}), 16), std::invalid_argument);
}

TEST_CASE("norm integral over t", "[periodize]") {
  // Midpoint error for the triangle is 1/(3 Q^2) absolute.
  for (int Q : {256, 2048}) {
    const double v = lacuna::detail::t_average(triangle(64), IntervalSet::periodic({{0, 1}}), Q).second;
    CHECK_THAT(v, WithinAbs(1.0 / 3.0, 1.0 / (3.0 * Q * Q) * 1.01));
  }
  const double v = lacuna::detail::t_average(triangle(64), IntervalSet::periodic({{0, 1}}), 2048).second;
  CHECK_THAT(v, WithinRel(1.0 / 3.0, 1e-6));
}

TEST_CASE("theorem 2 examples", "[periodize]") {
  lacuna::Rng rng(3);
  const auto two = lacuna::random_smooth_band(LacunarySequence(Terms{0, 3}), 2.0, 32, rng);
  const auto all = lacuna::theorem2_experiment(two, IntervalSet::periodic({{0, 1}}), 64);
  for (const auto& r : all.per_t) CHECK_THAT(r.ratio, WithinAbs(1.0, 1e-12));
  CHECK_THAT(all.global_ratio, WithinAbs(1.0, 1e-12));

  const auto single = lacuna::random_smooth_band(LacunarySequence(Terms{5}), 2.0, 32, rng);
  const auto E = IntervalSet::periodic({{0.1, 0.35}, {0.5, 0.6}});
  const auto one = lacuna::theorem2_experiment(single, E, 64);
  CHECK_FALSE(one.per_t.empty());
  for (const auto& r : one.per_t) CHECK_THAT(r.ratio, WithinAbs(0.35, 1e-12));

  const auto r = lacuna::theorem2_experiment(two, IntervalSet::periodic({{0, 0.6}}), 128);
  CHECK(r.averaging_holds);
  CHECK(r.global_ratio >= r.min_ratio - 1e-6);
  CHECK(r.support_ok);
  CHECK_THAT(r.direct_ratio, WithinAbs(r.global_ratio, 1e-4));
  CHECK_THAT(r.gamma, WithinAbs(0.6, 1e-15));

  CHECK_THROWS_AS(lacuna::theorem2_experiment(zero_band(), E, 16), std::invalid_argument);
}
