#pragma once

// Switched write-cycle simulator: control pulses from S/SD, piecewise-constant
// switch topology, fixed-step RK4 on the (v_c, i_l) state.

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "resram/circuit.hpp"
#include "resram/rk4.hpp"

namespace resram {

using State = Eigen::Vector2d;  // (v_c [V], i_l [A])

struct PulseSchedule {
  double clock_period{1e-9};
  double s_rise{0.0};
  double s_fall{0.5e-9};
  int delay_code{0};  // 4-bit tuning register, 0..15
  double base_delay{0.0};
  double delay_step{0.0};

  double delay() const { return base_delay + delay_code * delay_step; }
  bool operator==(const PulseSchedule&) const = default;
};

void validate(const PulseSchedule& schedule);

/// Register code whose SD delay is closest to `target` (ties to the lower code).
int nearest_delay_code(const PulseSchedule& schedule, double target);

struct Window {
  double start{};
  double end{};
  double width() const { return end - start; }
  bool operator==(const Window&) const = default;
};

struct ControlWaveforms {
  double clock_period{};
  std::vector<Window> vsr_windows;
  std::vector<Window> vdn_windows;
  std::vector<Window> pullup_windows;
};

/// VSR = S xor SD, VDN = S and SD, pull-up from the end of the last VSR pulse to the
/// end of the period. With `strict`, a zero SD delay (no VSR pulse) is an error.
ControlWaveforms build_control(const PulseSchedule& schedule, bool strict = false);

struct BoosterConfig {
  double inductance{};
  double gate_capacitance{};
  double series_resistance{};
  bool operator==(const BoosterConfig&) const = default;
};

struct PhaseConfig {
  double series_switch_on_resistance{0.0};  // added to R_T while VSR is high
  double pulldown_resistance{0.5};
  double pullup_resistance{0.5};
  std::optional<BoosterConfig> booster;
  bool operator==(const PhaseConfig&) const = default;
};

void validate(const PhaseConfig& phases);

enum class Phase { hold, discharge, pulldown, recovery, pullup };

std::string_view to_string(Phase phase);
bool is_resonant(Phase phase);

struct TraceSample {
  double t{};
  double v_c{};
  double i_l{};
  Phase phase{Phase::hold};  // phase of the step ending at t (sample 0: first step)
};

enum class EventKind { phase_change, current_zero, clamp };

struct TraceEvent {
  double t{};
  EventKind kind{};
  Phase phase{};
  double value{};  // clamp: inductor current at switch opening
};

struct WaveformTrace {
  double dt{};
  std::vector<TraceSample> samples;
  std::vector<TraceEvent> events;
  std::vector<double> booster_peaks;  // peak gate voltage per VSR window
};

/// Which conduction paths are active during one step.
struct Topology {
  bool series_closed{false};
  double series_resistance{0.0};
  double pulldown_conductance{0.0};
  double pullup_conductance{0.0};
};

AffineSystem<double, 2> state_equations(const RlcParams& params, const Topology& topology);

/// Fixed-step RK4 over one topology. Steps are `dt` rounded so that an integral
/// number of them spans `duration` exactly. Returns every state including the first.
std::vector<State> integrate_phase(const State& initial, const RlcParams& params, const Topology& topology,
                                   double duration, double dt);

/// Largest admissible step for these parameters: min(T_R / 1e4, fastest rail tau / 20).
double default_dt(const RlcParams& params, const PhaseConfig& phases);

WaveformTrace simulate_write_cycle(const RlcParams& params, const PhaseConfig& phases,
                                   const ControlWaveforms& control, double dt);

/// First positive-to-nonpositive crossing of i_l inside a resonant phase, by linear interpolation.
std::optional<double> find_current_zero(const WaveformTrace& trace);

/// Single resonant window from the discharge initial condition, long enough to show the
/// first current zero when the tank rings.
WaveformTrace probe_discharge(const RlcParams& params, const PhaseConfig& phases, double dt);

/// VSR width measured from the simulated current zero; empty when the tank does not ring.
std::optional<double> auto_tune_vsr_width(const RlcParams& params, const PhaseConfig& phases, double dt);

/// Schedule with S high for the first half period and SD delayed by exactly `vsr_width`.
PulseSchedule tuned_schedule(double clock_period, double vsr_width);

}  // namespace resram
