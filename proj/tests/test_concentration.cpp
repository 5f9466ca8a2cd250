#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "lacuna/concentration.hpp"
#include "lacuna/random.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using lacuna::IntervalSet;
using lacuna::LacunarySequence;
using cplx = std::complex<double>;
using Terms = std::vector<std::int64_t>;

namespace {

IntervalSet random_set(lacuna::Rng& rng, int pieces) {
  std::vector<lacuna::Interval> v;
  for (int i = 0; i < pieces; ++i) {
    const double lo = rng.uniform();
    v.push_back({lo, lo + rng.uniform(0.01, 0.15)});
  }
  return IntervalSet::periodic(v);
}

LacunarySequence random_spectrum(lacuna::Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(2, 12));
  const auto s = lacuna::random_sidon(n, rng, static_cast<std::int64_t>(8 * n * n), 1000);
  REQUIRE(s);
  return *s;
}

double lambda_min(const LacunarySequence& s, const IntervalSet& E) {
  return lacuna::sharp_constant(lacuna::build_gram(s, E)).lambda_min;
}

}  // namespace

TEST_CASE("Gram matrix examples", "[concentration]") {
  const auto id = lacuna::build_gram(LacunarySequence(Terms{0, 3, 7}), IntervalSet::periodic({{0, 1}}));
  CHECK((id.gram - lacuna::ComplexMatrix::Identity(3, 3)).norm() < 1e-15);

  const auto two = lacuna::build_gram(LacunarySequence(Terms{0, 1}), IntervalSet::periodic({{0, 0.5}}));
  CHECK_THAT(two.gram(0, 0).real(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(two.gram(1, 1).real(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(std::abs(two.gram(0, 1)), WithinAbs(1.0 / std::numbers::pi, 1e-15));
  CHECK(two.gram(1, 0) == std::conj(two.gram(0, 1)));

  const auto one = lacuna::build_gram(LacunarySequence(Terms{42}), IntervalSet::periodic({{0.2, 0.47}}));
  REQUIRE(one.gram.rows() == 1);
  CHECK_THAT(one.gram(0, 0).real(), WithinAbs(0.27, 1e-15));

  CHECK_THROWS_AS(lacuna::build_gram(LacunarySequence(Terms{}), IntervalSet::periodic({{0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(lacuna::build_gram(LacunarySequence(Terms{1}), IntervalSet::finite({{0, 1}})), std::invalid_argument);
}

TEST_CASE("Gram matrices are Hermitian with constant diagonal", "[concentration][property]") {
  lacuna::Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = lacuna::build_gram(random_spectrum(rng), random_set(rng, 5));
    CHECK((p.gram - p.gram.adjoint()).norm() == 0.0);
    for (Eigen::Index i = 0; i < p.gram.rows(); ++i) REQUIRE_THAT(p.gram(i, i).real(), WithinAbs(p.set.base_measure(), 1e-15));
    const auto sc = lacuna::sharp_constant(p);
    CHECK(sc.lambda_min >= -1e-12);
    CHECK(sc.lambda_max <= 1.0 + 1e-12);
    CHECK(sc.lambda_min <= p.set.base_measure() + 1e-12);
    CHECK(sc.lambda_max >= p.set.base_measure() - 1e-12);
  }
}

TEST_CASE("sharp constant examples", "[concentration]") {
  const auto two = lacuna::sharp_constant(lacuna::build_gram(LacunarySequence(Terms{0, 1}), IntervalSet::periodic({{0, 0.5}})));
  CHECK_THAT(two.lambda_min, WithinAbs(0.5 - 1.0 / std::numbers::pi, 1e-10));
  CHECK_THAT(two.lambda_max, WithinAbs(0.5 + 1.0 / std::numbers::pi, 1e-10));
  CHECK(two.residual <= 1e-10);
  CHECK_THAT(two.verification, WithinAbs(two.lambda_min, 1e-10));
  CHECK_THAT(two.minimizer.norm(), WithinAbs(1.0, 1e-14));

  const auto full = lacuna::sharp_constant(lacuna::build_gram(LacunarySequence(Terms{1, 2, 4, 8}), IntervalSet::periodic({{0, 1}})));
  CHECK_THAT(full.lambda_min, WithinAbs(1.0, 1e-12));

  for (double gamma : {0.05, 0.3, 0.9}) {
    const auto s = lacuna::sharp_constant(lacuna::build_gram(LacunarySequence(Terms{17}), IntervalSet::periodic({{0.1, 0.1 + gamma}})));
    CHECK_THAT(s.lambda_min, WithinAbs(gamma, 1e-12));
  }
}

TEST_CASE("minimizer phase convention and verification", "[concentration][property]") {
  lacuna::Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = lacuna::build_gram(random_spectrum(rng), random_set(rng, 4));
    const auto sc = lacuna::sharp_constant(p);
    Eigen::Index big = 0;
    sc.minimizer.cwiseAbs().maxCoeff(&big);
    CHECK(sc.minimizer(big).imag() == 0.0);
    CHECK(sc.minimizer(big).real() > 0.0);
    CHECK(sc.residual <= 1e-10);
    CHECK_THAT(sc.verification, WithinAbs(sc.lambda_min, 1e-10));
  }
}

TEST_CASE("lambda_min lower-bounds the concentration of any polynomial", "[concentration][property]") {
  lacuna::Rng rng(16);
  const auto spectrum = random_spectrum(rng);
  const auto E = random_set(rng, 4);
  const double lmin = lambda_min(spectrum, E);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = lacuna::random_polynomial(spectrum, rng);
    REQUIRE(lacuna::integral_over_set(g, E) / g.norm_sq() >= lmin - 1e-9);
  }
}

TEST_CASE("monotonicity and translation invariances", "[concentration][property]") {
  lacuna::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spectrum = random_spectrum(rng);
    const auto E = random_set(rng, 3);
    const auto bigger = lacuna::unite(E, random_set(rng, 2));
    const double l = lambda_min(spectrum, E);
    REQUIRE(l <= lambda_min(spectrum, bigger) + 1e-10);
    REQUIRE_THAT(lambda_min(spectrum, E.translated(rng.uniform(-3.0, 3.0))), WithinAbs(l, 1e-10));
    const auto shifted = spectrum.shifted(rng.uniform_int(-500, 500));
    const auto a = lacuna::sharp_constant(lacuna::build_gram(spectrum, E)).eigenvalues;
    const auto b = lacuna::sharp_constant(lacuna::build_gram(shifted, E)).eigenvalues;
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE_THAT(b[i], WithinAbs(a[i], 1e-12));
  }
}

TEST_CASE("shaped sets have the requested measure", "[concentration]") {
  lacuna::Rng rng(1);
  for (auto shape : {lacuna::SetShape::interval, lacuna::SetShape::holes, lacuna::SetShape::random}) {
    for (double gamma : {0.1, 0.5, 1.0}) CHECK_THAT(lacuna::shaped_set(shape, gamma, rng).base_measure(), WithinAbs(gamma, 1e-12));
    CHECK(lacuna::parse_set_shape(lacuna::to_string(shape)) == shape);
  }
  CHECK_THROWS_AS(lacuna::parse_set_shape("blob"), std::invalid_argument);
  CHECK_THROWS_AS(lacuna::shaped_set(lacuna::SetShape::interval, 0.0, rng), std::invalid_argument);
}

TEST_CASE("constant sweep", "[concentration]") {
  using lacuna::SetShape;
  const auto cells = lacuna::sweep_grid({1.0, 0.5, 0.25}, {1, 2}, {1, 4, 8},
                                        {SetShape::interval, SetShape::holes, SetShape::random}, 2, 99);
  const auto report = lacuna::constant_sweep(cells);
  REQUIRE(report.samples.size() == cells.size());
  for (const auto& s : report.samples) {
    REQUIRE(s.lambda_min.has_value());
    if (s.cell.gamma == 1.0) CHECK_THAT(*s.lambda_min, WithinAbs(1.0, 1e-12));
    if (s.cell.N == 1) CHECK_THAT(*s.lambda_min, WithinAbs(s.cell.gamma, 1e-12));
  }
  CHECK(report.envelope.size() == 6);
  // deterministic regardless of thread scheduling
  const auto again = lacuna::constant_sweep(cells);
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(*again.samples[i].lambda_min == *report.samples[i].lambda_min);

  const auto bad = lacuna::constant_sweep({{0.5, 0, 4, SetShape::interval, 1}});
  CHECK_FALSE(bad.samples[0].lambda_min.has_value());
  CHECK_FALSE(bad.samples[0].error.empty());
  CHECK_THROWS_AS(lacuna::constant_sweep({}), std::invalid_argument);
}

TEST_CASE("shrinking a nested set never raises lambda_min", "[concentration]") {
  lacuna::Rng rng(23);
  const auto spectrum = *lacuna::random_sidon(10, rng, 800, 1000);
  double prev = 2.0;
  for (double gamma : {1.0, 0.8, 0.6, 0.4, 0.2, 0.1}) {
    const double l = lambda_min(spectrum, IntervalSet::periodic({{0, gamma}}));
    CHECK(l <= prev + 1e-12);
    prev = l;
  }
}
