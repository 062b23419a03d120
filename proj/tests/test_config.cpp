#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "resram/config.hpp"
#include "resram/errors.hpp"
#include "resram/units.hpp"

using namespace resram;

namespace {

std::string config_error_key(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("engineering quantities") {
  CHECK(parse_quantity("0.621nH", Unit::henry) == 6.21e-10);
  CHECK(parse_quantity("10.10 pF", Unit::farad) == 1.010e-11);
  CHECK(parse_quantity("248ps", Unit::second) == 2.48e-10);
  CHECK(parse_quantity("1GHz", Unit::hertz) == 1e9);
  CHECK(parse_quantity("200MHz", Unit::hertz) == 2e8);
  CHECK(parse_quantity("900mV", Unit::volt) == 0.9);
  CHECK(parse_quantity("1.5kohm", Unit::ohm) == 1500.0);
  CHECK(parse_quantity("39.45f", Unit::farad) == 3.945e-14);
  CHECK(parse_quantity("1e-9", Unit::second) == 1e-9);
  CHECK(parse_quantity("3u", Unit::second) == 3e-6);
  CHECK_THROWS_AS(parse_quantity("0.621nF", Unit::henry), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("12 parsecs", Unit::second), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("", Unit::volt), std::invalid_argument);
  CHECK_THROWS_AS(parse_quantity("nH", Unit::henry), std::invalid_argument);
}

TEST_CASE("number formatting") {
  CHECK(format_sig6(248.929979490679e-12) == "2.4893e-10");
  CHECK(format_sig6(0.0) == "0");
  CHECK(format_sig6(1.0) == "1");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int k = 0; k < 1000; ++k) {
    const double v = std::pow(10.0, u(rng)) * (k % 2 ? -1.0 : 1.0);
    CHECK(std::stod(format_exact(v)) == v);
  }
}

TEST_CASE("parse_config examples") {
  const auto c = parse_config("circuit.inductance = 0.621nH\n");
  REQUIRE(c.circuit.inductance);
  CHECK(*c.circuit.inductance == 6.21e-10);

  const auto empty = parse_config("# nothing here\n\n");
  CHECK(empty == RunConfig{});

  CHECK(config_error_key("geometry.mux_factor = 0") == "geometry.mux_factor");
  CHECK(config_error_key("geometry.colums = 12") == "geometry.colums");
  CHECK(config_error_key("circuit.inductance = 3pF") == "circuit.inductance");
  CHECK(config_error_key("schedule.delay_code = 16") == "schedule.delay_code");
  CHECK(config_error_key("sizing.target_swing_fraction = 1.5") == "sizing.target_swing_fraction");
  CHECK(config_error_key("corners.SS.x_multiplier = 1") == "corners.SS.x_multiplier");
  CHECK(config_error_key("output.format = xml") == "output.format");
  CHECK_THROWS_AS(parse_config("circuit.inductance 0.621nH"), ConfigError);
}

TEST_CASE("comments, whitespace and corners") {
  const auto c = parse_config(
      "  circuit.v_dd = 800mV   # lowered supply\n"
      "corners.HOT.r_multiplier = 1.4\n"
      "corners.HOT.c_multiplier = 1.02\n"
      "simulation.auto_tune = false\n");
  CHECK(c.circuit.v_dd == 0.8);
  REQUIRE(c.corners.count("HOT"));
  CHECK(c.corners.at("HOT").r_multiplier == 1.4);
  CHECK(c.corners.at("HOT").c_multiplier == 1.02);
  CHECK(c.corners.size() == 4);
  CHECK_FALSE(c.simulation.auto_tune);
}

TEST_CASE("cross-field validation") {
  CHECK_THROWS_AS(parse_config("circuit.v_dd = 0.9\ncircuit.v_bias = 1.2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("sizing.f_min = 2GHz\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schedule.s_fall = 1.5ns\n"), ConfigError);
}

TEST_CASE("resolve_circuit follows the geometry unless overridden") {
  auto c = parse_config("");
  auto p = resolve_circuit(c);
  CHECK(p.capacitance == 256 * 39.45e-15);
  CHECK(p.r_total == 0.5);
  CHECK(p.inductance == 0.621e-9);

  c = parse_config("circuit.capacitance = 10.10pF\ncircuit.r_total = 0.3\ncircuit.inductance = 1nH\n");
  p = resolve_circuit(c);
  CHECK(p.capacitance == 10.10e-12);
  CHECK(p.r_total == 0.3);
  CHECK(p.inductance == 1e-9);

  c = parse_config("circuit.r_mos = 0.2\ncircuit.r_wire = 0.1\ncircuit.r_inductor = 0.05\n");
  p = resolve_circuit(c);
  CHECK(p.r_total == doctest::Approx(0.35));

  CHECK_THROWS_AS(
      parse_config("circuit.r_total = 1\ncircuit.r_mos = 0.2\ncircuit.r_wire = 0.1\ncircuit.r_inductor = 0.05\n"),
      ConfigError);
}

TEST_CASE("resolve_phases") {
  auto c = parse_config("");
  auto ph = resolve_phases(c);
  CHECK(ph.pulldown_resistance == 0.5);
  CHECK(ph.pullup_resistance == 0.5);
  CHECK_FALSE(ph.booster);

  c = parse_config(
      "phases.pulldown_resistance = 2\n"
      "phases.booster.inductance = 0.1nH\n"
      "phases.booster.gate_capacitance = 20fF\n"
      "phases.booster.series_resistance = 5\n");
  ph = resolve_phases(c);
  CHECK(ph.pulldown_resistance == 2.0);
  REQUIRE(ph.booster);
  CHECK(ph.booster->gate_capacitance == 20e-15);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  for (int n = 0; n < 300; ++n) {
    RunConfig c;
    if (u(rng) < 0.5) c.circuit.r_total = pick(0.01, 10.0);
    if (u(rng) < 0.5) c.circuit.inductance = pick(1e-11, 1e-8);
    if (u(rng) < 0.5) c.circuit.capacitance = pick(1e-13, 1e-10);
    c.circuit.v_dd = pick(0.5, 1.2);
    if (u(rng) < 0.5) c.circuit.v_bias = c.circuit.v_dd * u(rng);
    c.geometry.rows = 1 + static_cast<int>(u(rng) * 1023);
    c.geometry.columns = 1 + static_cast<int>(u(rng) * 511);
    c.geometry.mux_factor = 1;
    c.geometry.cap_per_column = pick(1e-15, 1e-13);
    c.geometry.driver_resistance_per_bit = pick(1.0, 1e3);
    c.geometry.shared_inductance = pick(1e-11, 1e-8);
    if (u(rng) < 0.3) c.geometry.total_capacitance = pick(1e-13, 1e-10);
    c.schedule.delay_code = static_cast<int>(u(rng) * 16);
    c.schedule.delay_step = pick(1e-12, 1e-11);
    c.schedule.base_delay = pick(1e-12, 1e-10);
    c.phases.series_switch_on_resistance = u(rng);
    if (u(rng) < 0.5) c.phases.pulldown_resistance = pick(0.1, 10.0);
    if (u(rng) < 0.3) {
      c.phases.booster_inductance = pick(1e-11, 1e-9);
      c.phases.booster_gate_capacitance = pick(1e-15, 1e-13);
      c.phases.booster_series_resistance = pick(0.1, 10.0);
    }
    c.sizing.target_swing_fraction = 0.1 + 0.8 * u(rng);
    c.sizing.bits_connected = 1 + static_cast<int>(u(rng) * 512);
    c.corners["C" + std::to_string(n % 5)] = Corner{"C" + std::to_string(n % 5), pick(0.5, 2.0), pick(0.5, 2.0)};
    c.simulation.dt = u(rng) < 0.5 ? 0.0 : pick(1e-15, 1e-13);
    c.simulation.auto_tune = u(rng) < 0.5;
    if (u(rng) < 0.5) c.output.format = "json";
    if (u(rng) < 0.5) c.output.path = "out/run.json";

    const std::string text = serialize_config(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}
