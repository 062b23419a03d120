#pragma once

// Flat dotted-key run configuration:
//
//   # comment
//   circuit.inductance = 0.621nH
//   geometry.columns   = 256
//   corners.SS.r_multiplier = 1.25
//
// Unknown keys, malformed numbers, wrong units and out-of-range values raise
// ConfigError naming the key.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resram/array_model.hpp"
#include "resram/circuit.hpp"
#include "resram/sizing.hpp"
#include "resram/sweep.hpp"
#include "resram/transient.hpp"

namespace resram {

struct CircuitSection {
  // Unset fields fall back to the geometry-derived tank.
  std::optional<double> r_total;
  std::optional<double> r_mos;
  std::optional<double> r_wire;
  std::optional<double> r_inductor;
  std::optional<double> inductance;
  std::optional<double> capacitance;
  double v_dd{0.9};
  std::optional<double> v_bias;  // default v_dd / 2
  bool operator==(const CircuitSection&) const = default;
};

struct PhasesSection {
  double series_switch_on_resistance{0.0};
  std::optional<double> pulldown_resistance;  // default: driver resistance / connected columns
  std::optional<double> pullup_resistance;
  std::optional<double> booster_inductance;
  std::optional<double> booster_gate_capacitance;
  std::optional<double> booster_series_resistance;
  bool operator==(const PhasesSection&) const = default;
};

struct SimulationSection {
  double dt{0.0};        // 0 = default_dt
  bool auto_tune{true};  // SD delay taken from the measured current zero
  bool operator==(const SimulationSection&) const = default;
};

struct OutputSection {
  std::string format;  // csv | json | table; empty = per-command default
  std::string path;
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  CircuitSection circuit;
  ArrayGeometry geometry;
  PulseSchedule schedule{1e-9, 0.0, 0.5e-9, 15, 100e-12, 10e-12};
  PhasesSection phases;
  SizingSpec sizing;
  std::map<std::string, Corner> corners{{"FF", {"FF", 0.85, 0.95}}, {"SS", {"SS", 1.25, 1.05}}, {"TT", {"TT", 1.0, 1.0}}};
  SimulationSection simulation;
  OutputSection output;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::string_view text);

/// Applies one `key = value` assignment (used for files and `--set` overrides).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Every field, defaults included, as exact `key = value` lines in a stable order.
std::string serialize_config(const RunConfig& config);

/// (key, value) pairs in serialization order.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

/// Cross-field validation; throws ConfigError naming the section or key.
void validate(const RunConfig& config);

RlcParams resolve_circuit(const RunConfig& config);
PhaseConfig resolve_phases(const RunConfig& config);

}  // namespace resram
