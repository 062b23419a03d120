#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "resram/circuit.hpp"

using namespace resram;

namespace {
const RlcParams kRow1 = RlcParams::make(0.5, 0.621e-9, 10.10e-12, 0.9);
}

TEST_CASE("derive_resonance on the 256-column reference tank") {
  const auto d = derive_resonance(kRow1);
  REQUIRE(d.underdamped);
  // Frozen from an independent 30-digit evaluation.
  CHECK(*d.f_r == doctest::Approx(2.00859695976765e9).epsilon(1e-12));
  CHECK(*d.t_r_half == doctest::Approx(248.929979490679e-12).epsilon(1e-12));
  CHECK(d.q_f == doctest::Approx(15.6824932347955).epsilon(1e-12));
  CHECK(d.alpha == doctest::Approx(4.02576489533011e8).epsilon(1e-12));
  CHECK(*d.t_r == doctest::Approx(2.0 * *d.t_r_half).epsilon(1e-15));
  // Published half-period is 248.0 ps for this L and C.
  CHECK(std::abs(*d.t_r_half - 248.0e-12) / 248.0e-12 < 0.02);
}

TEST_CASE("half-period matches the zero crossing of an independent RK4 run") {
  const auto d = derive_resonance(kRow1);
  const double h = *d.t_r / 1e4;
  const auto trace = oracle::rk4_series(0.5, 0.621e-9, 10.10e-12, 0.45, 0.9, 0.0, 0.75 * *d.t_r, h);
  double t_zero = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k - 1].i > 0.0 && trace[k].i <= 0.0) {
      t_zero = trace[k - 1].t + h * trace[k - 1].i / (trace[k - 1].i - trace[k].i);
      break;
    }
  }
  CHECK(std::abs(t_zero - *d.t_r_half) < h);
}

TEST_CASE("lossless limit") {
  const double l = 0.621e-9, c = 10.10e-12;
  const auto d = derive_resonance(RlcParams::make(1e-12, l, c, 0.9));
  CHECK(*d.f_r == doctest::Approx(1.0 / (2.0 * std::numbers::pi * std::sqrt(l * c))).epsilon(1e-12));
  CHECK(d.q_f > 1e12);
  CHECK(d.alpha < 1e3);
}

TEST_CASE("critical damping boundary is not underdamped") {
  const auto p = RlcParams::make(2.0, 0.01e-9, 10e-12, 0.9);
  CHECK(min_inductance(2.0, 10e-12) == p.inductance);
  const auto d = derive_resonance(p);
  CHECK_FALSE(d.underdamped);
  CHECK_FALSE(d.f_r.has_value());
  CHECK_FALSE(d.t_r_half.has_value());
}

TEST_CASE("min_inductance") {
  CHECK(min_inductance(2.0, 10e-12) == doctest::Approx(0.01e-9).epsilon(1e-15));
  CHECK(min_inductance(0.5, 10.10e-12) == doctest::Approx(6.3125e-13).epsilon(1e-15));
  CHECK(min_inductance(1.0, 1e-300) < 1e-299);

  const double lc = min_inductance(0.5, 10.10e-12);
  CHECK_FALSE(derive_resonance(RlcParams::make(0.5, lc, 10.10e-12, 0.9)).underdamped);
  CHECK(derive_resonance(RlcParams::make(0.5, std::nextafter(lc, 1.0), 10.10e-12, 0.9)).underdamped);

  CHECK_THROWS_AS(min_inductance(0.0, 1e-12), ParameterDomainError);
  CHECK_THROWS_AS(min_inductance(1.0, -1e-12), ParameterDomainError);
}

TEST_CASE("parameter domain errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(derive_resonance(RlcParams::make(0.0, 1e-9, 1e-12, 0.9)), ParameterDomainError);
  CHECK_THROWS_AS(derive_resonance(RlcParams::make(1.0, -1e-9, 1e-12, 0.9)), ParameterDomainError);
  CHECK_THROWS_AS(derive_resonance(RlcParams::make(1.0, 1e-9, nan, 0.9)), ParameterDomainError);
  CHECK_THROWS_AS(derive_resonance(RlcParams::make(1.0, 1e-9, 1e-12, 0.0)), ParameterDomainError);

  auto p = RlcParams::make(ResistanceBreakdown{0.3, 0.1, 0.1}, 1e-9, 1e-12, 0.9);
  CHECK(p.r_total == doctest::Approx(0.5));
  CHECK_NOTHROW(validate(p));
  p.r_total = 0.6;
  CHECK_THROWS_AS(validate(p), ParameterDomainError);
}

TEST_CASE("bias defaults to exactly half the supply") {
  const auto p = RlcParams::make(1.0, 1e-9, 1e-12, 0.9);
  CHECK(p.v_bias == 0.9 / 2.0);
}

TEST_CASE("properties over random tanks") {
  std::mt19937_64 rng(20201);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 2000; ++n) {
    const double r = 0.01 * std::pow(1e3, u(rng));
    const double c = 1e-13 * std::pow(1e3, u(rng));
    const double l = min_inductance(r, c) * std::pow(100.0, 2.0 * u(rng) - 1.0);
    const auto p = RlcParams::make(r, l, c, 0.9);
    const auto d = derive_resonance(p);

    CHECK(d.underdamped == (l > min_inductance(r, c)));
    CHECK(d.q_f * r == doctest::Approx(std::sqrt(l / c)).epsilon(1e-12));
    if (std::abs(d.q_f - 0.5) > 1e-9) CHECK((d.q_f > 0.5) == d.underdamped);

    if (!d.underdamped) continue;
    CHECK(*d.t_r_half == doctest::Approx(std::numbers::pi / *d.omega_d).epsilon(1e-15));

    // f_r falls in C, and in L once Q exceeds 1/sqrt(2).
    const auto dc = derive_resonance(RlcParams::make(r, l, c * 1.01, 0.9));
    const auto dl = derive_resonance(RlcParams::make(r, l * 1.01, c, 0.9));
    CHECK(*dc.f_r < *d.f_r);
    if (d.q_f > std::numbers::sqrt2 / 2) CHECK(*dl.f_r < *d.f_r);

    // Shared-inductor scaling (R/k, L/k, kC) leaves the resonance unchanged.
    const double k = std::pow(64.0, u(rng));
    const auto ds = derive_resonance(RlcParams::make(r / k, l / k, c * k, 0.9));
    CHECK(ds.underdamped);
    CHECK(ds.q_f == doctest::Approx(d.q_f).epsilon(1e-12));
    CHECK(*ds.f_r == doctest::Approx(*d.f_r).epsilon(1e-12));
    CHECK(*ds.t_r_half == doctest::Approx(*d.t_r_half).epsilon(1e-12));
    CHECK(ds.alpha * *ds.t_r_half == doctest::Approx(d.alpha * *d.t_r_half).epsilon(1e-12));
  }
}

TEST_CASE("retention inversion") {
  const double q = q_for_retention(2.0 / 3.0);
  CHECK(q == doctest::Approx(3.90619304869146).epsilon(1e-12));
  CHECK(half_cycle_retention(q) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(half_cycle_retention(0.5) == 0.0);
  CHECK_THROWS_AS(q_for_retention(1.0), ParameterDomainError);
}

TEST_CASE("scalar-generic core") {
  const auto pf = RlcParamsT<long double>::make(0.5L, 0.621e-9L, 10.10e-12L, 0.9L);
  const auto d = derive_resonance(pf);
  CHECK(static_cast<double>(*d.t_r_half) == doctest::Approx(248.929979490679e-12).epsilon(1e-12));
}
