#include <doctest.h>

#include <cmath>

#include "resram/array_model.hpp"
#include "resram/errors.hpp"

using namespace resram;

TEST_CASE("effective_params from the default geometry") {
  const ArrayGeometry g;
  const auto p = effective_params(g, 0.9);
  CHECK(p.capacitance == doctest::Approx(10.10e-12).epsilon(1e-3));
  CHECK(p.capacitance == 256 * g.cap_per_column);
  CHECK(p.r_total == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.inductance == g.shared_inductance);
  CHECK(p.v_bias == 0.45);
  REQUIRE(p.r_breakdown);
  CHECK(p.r_breakdown->r_mos == 0.5);
  CHECK(derive_resonance(p).q_f == doctest::Approx(15.68).epsilon(1e-3));
}

TEST_CASE("single column sees the full driver resistance") {
  ArrayGeometry g;
  g.columns = 1;
  g.inductor_parasitic_resistance = 0.2;
  const auto p = effective_params(g, 0.9);
  CHECK(p.capacitance == g.cap_per_column);
  CHECK(p.r_total == doctest::Approx(128.2).epsilon(1e-15));
}

TEST_CASE("column count and shared inductor co-scale without changing the tank response") {
  ArrayGeometry g;
  g.columns = 32;
  const auto base = derive_resonance(effective_params(g, 0.9));
  for (int k : {2, 4, 8}) {
    ArrayGeometry h = g;
    h.columns = g.columns * k;
    h.shared_inductance = g.shared_inductance / k;
    const auto d = derive_resonance(effective_params(h, 0.9));
    CHECK(d.q_f == doctest::Approx(base.q_f).epsilon(1e-12));
    CHECK(*d.t_r_half == doctest::Approx(*base.t_r_half).epsilon(1e-12));
  }
  ArrayGeometry doubled = g;
  doubled.columns *= 2;
  const auto p1 = effective_params(g, 0.9), p2 = effective_params(doubled, 0.9);
  CHECK(p2.capacitance == doctest::Approx(2 * p1.capacitance));
  CHECK(p2.r_total == doctest::Approx(p1.r_total / 2));
}

TEST_CASE("mux division") {
  ArrayGeometry g;
  g.columns = 256;
  g.mux_factor = 2;
  CHECK(connected_columns(g) == 128);
  CHECK_FALSE(mux_division_inexact(g));
  g.columns = 255;
  CHECK(connected_columns(g) == 127);
  CHECK(mux_division_inexact(g));
  g.total_capacitance = 5.07e-12;
  CHECK(effective_params(g, 0.9).capacitance == 5.07e-12);
  g.columns = 1;
  g.mux_factor = 4;
  g.total_capacitance.reset();
  CHECK_THROWS_AS(effective_params(g, 0.9), GeometryError);
}

TEST_CASE("geometry validation") {
  ArrayGeometry g;
  g.mux_factor = 0;
  CHECK_THROWS(validate(g));
  g = {};
  g.rows = 0;
  CHECK_THROWS(validate(g));
  g = {};
  g.cap_per_column = -1e-15;
  CHECK_THROWS(validate(g));
  g = {};
  g.shared_inductance = 0.0;
  CHECK_THROWS(validate(g));
}

TEST_CASE("table1 at the shared inductor") {
  const auto rows = table1(0.621e-9, reference_table1_configs(), 128.0, 0.0);
  REQUIRE(rows.size() == 3);
  const double expected[] = {248.0e-12, 176.0e-12, 125.0e-12};
  const double frozen[] = {248.929979490679e-12, 176.46e-12, 124.78e-12};
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(*rows[k].derived.t_r_half - expected[k]) / expected[k] < 0.02);
    CHECK(*rows[k].derived.t_r_half == doctest::Approx(frozen[k]).epsilon(2e-4));
  }
  CHECK(*rows[0].derived.t_r_half > *rows[1].derived.t_r_half);
  CHECK(*rows[1].derived.t_r_half > *rows[2].derived.t_r_half);
  CHECK(rows[1].columns == 126);
  CHECK(rows[1].r_total == doctest::Approx(128.0 / 126));

  // Small R_T: the half period approaches pi sqrt(LC).
  const auto ideal = table1(0.621e-9, {{1, 256, 10.10e-12}}, 1e-6, 0.0);
  CHECK(*ideal[0].derived.t_r_half == doctest::Approx(std::numbers::pi * std::sqrt(0.621e-9 * 10.10e-12)).epsilon(1e-12));
}

TEST_CASE("discharge time versus rows") {
  ArrayGeometry g;
  const auto pts = discharge_time_vs_rows(g, {64, 128, 256, 512}, 0.9);
  REQUIRE(pts.size() == 4);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    CHECK(pts[k].capacitance > pts[k - 1].capacitance);
    CHECK(*pts[k].derived.t_r_half > *pts[k - 1].derived.t_r_half);
  }

  const auto one = discharge_time_vs_rows(g, {g.rows}, 0.9);
  REQUIRE(one.size() == 1);
  CHECK(one[0].derived == derive_resonance(effective_params(g, 0.9)));

  // All capacitance from rows and almost no resistance: doubling rows scales by sqrt(2).
  ArrayGeometry pure;
  pure.rows = 100;
  pure.cap_per_row_increment = 0.1e-15;
  pure.cap_per_column = 10e-15;
  pure.driver_resistance_per_bit = 1e-6;
  const auto sq = discharge_time_vs_rows(pure, {200, 400}, 0.9);
  CHECK(*sq[1].derived.t_r_half / *sq[0].derived.t_r_half == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("overdamped row counts are flagged, not fatal") {
  ArrayGeometry g;
  g.driver_resistance_per_bit = 128.0 * 40.0;
  const auto pts = discharge_time_vs_rows(g, {64, 512}, 0.9);
  REQUIRE(pts.size() == 2);
  CHECK_FALSE(pts[1].derived.underdamped);
  CHECK_FALSE(pts[1].derived.t_r_half.has_value());
}
