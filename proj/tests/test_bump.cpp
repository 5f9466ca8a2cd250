#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "lacuna/bump.hpp"
#include "lacuna/random.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const lacuna::BumpFunction& bump() { return lacuna::default_bump(); }

// Reference values computed once with 40-digit arbitrary-precision quadrature
// of the defining convolution and transform.
struct Reference {
  double x, value;
};
constexpr Reference phi_check_reference[] = {
    {0.0, 0.75},
    {0.5, 0.5810202020699232458},
    {1.0, 0.21429020486342221818},
    {2.5, -0.035386347465812298503},
    {10.0, 0.0017064475296167361668},
    {40.25, 6.0164354482401126673e-6},
};
constexpr Reference phi_reference[] = {
    {0.3, 0.93059627949989588564},
    {0.375, 0.5},
    {0.45, 0.069403720500104114358},
};

}  // namespace

TEST_CASE("phi: plateau, support and reference values", "[bump]") {
  CHECK(bump().phi(0.0) == 1.0);
  CHECK(bump().phi(0.6) == 0.0);
  CHECK(bump().phi(-0.5) == 0.0);
  CHECK_THAT(bump().phi(0.25 - 1e-9), WithinAbs(1.0, 1e-12));
  for (const auto& r : phi_reference) CHECK_THAT(bump().phi(r.x), WithinAbs(r.value, 1e-12));
}

TEST_CASE("phi: bounds and evenness on a grid", "[bump][property]") {
  for (int j = -1000; j <= 1000; ++j) {
    const double x = j / 1600.0;
    const double v = bump().phi(x);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE_THAT(v, WithinAbs(bump().phi(-x), 1e-14));
    if (std::abs(x) <= 0.25) REQUIRE_THAT(v, WithinAbs(1.0, 1e-12));
    if (std::abs(x) >= 0.5) REQUIRE(v == 0.0);
  }
}

TEST_CASE("phi_check: reference values", "[bump]") {
  for (const auto& r : phi_check_reference) {
    CHECK_THAT(bump().phi_check(r.x), WithinAbs(r.value, 1e-10));
    CHECK_THAT(bump().phi_check(-r.x), WithinAbs(r.value, 1e-10));
  }
  CHECK_THAT(bump().phi_check(0.0), WithinAbs(0.75, 1e-12));
}

TEST_CASE("phi_check: table route agrees with direct quadrature", "[bump][property]") {
  lacuna::Rng rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const double x = rng.uniform(-1000.0, 1000.0) * (trial < 30 ? 0.02 : 1.0);
    CHECK_THAT(bump().phi_check(x), WithinAbs(bump().phi_check_direct(x), 1e-10));
  }
}

TEST_CASE("phi_check_n is a translate", "[bump]") {
  CHECK(bump().phi_check_n(0, 0.37).real() == bump().phi_check(0.37));
  CHECK_THAT(bump().phi_check_n(5, -5.0).real(), WithinAbs(0.75, 1e-12));
  CHECK(bump().phi_check_n(3, 1.5).imag() == 0.0);
}

TEST_CASE("phi_check_run matches pointwise evaluation", "[bump]") {
  std::vector<double> run(600);
  for (double z0 : {-300.25, -0.5, 0.0, 17.125}) {
    bump().phi_check_run(z0, run);
    for (std::size_t j = 0; j < run.size(); ++j)
      REQUIRE_THAT(run[j], WithinAbs(bump().phi_check(z0 + static_cast<double>(j)), 1e-13));
  }
}

TEST_CASE("decay constant is finite and bounds the transform", "[bump][property]") {
  std::vector<double> xs;
  for (int j = 1; j <= 20; ++j) xs.push_back(10.0 * j);
  const double c_table = bump().empirical_decay_constant(xs);
  double c_direct = 0.0;
  for (double x : xs) c_direct = std::max(c_direct, std::abs(bump().phi_check_direct(x)) * (1 + x * x));
  CHECK(std::isfinite(c_table));
  CHECK(c_table > 0.0);
  CHECK_THAT(c_table, WithinRel(c_direct, 0.05));
  // The decay envelope dominates the transform everywhere it is used.
  for (int j = 0; j <= 4000; ++j) {
    const double z = 0.25 * j;
    REQUIRE(std::abs(bump().phi_check(z)) <= bump().decay_envelope(z) * (1 + 1e-9) + 1e-16);
  }
  const double r = bump().tail_radius(1e-10);
  CHECK(bump().decay_envelope(r) <= 1e-10);
}

TEST_CASE("inverse transform recovers phi", "[bump][property]") {
  for (double xi : {0.0, 0.1, 0.2, 0.55, 0.8}) {
    const double v = 2.0 * oracle::simpson_pieces(
                               [&](double x) { return bump().phi_check(x) * std::cos(2 * std::numbers::pi * xi * x); },
                               0.0, 1000.0, 4000, 1e-10);
    CHECK_THAT(v, WithinAbs(bump().phi(xi), 1e-6));
  }
}

TEST_CASE("mollifier width is validated", "[bump]") {
  CHECK_THROWS_AS(lacuna::BumpFunction(0.2), std::invalid_argument);
  CHECK_THROWS_AS(lacuna::BumpFunction(0.0), std::invalid_argument);
  CHECK_NOTHROW(lacuna::BumpFunction(1.0 / 16.0));
}
