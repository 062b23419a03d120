#pragma once

#include "resram/circuit.hpp"
#include "resram/transient.hpp"

namespace resram {

struct Dissipation {
  double series_r{};
  double pulldown{};
  double pullup{};
  double clamp{};  // inductor energy dumped when the series switch opens mid-current

  double total() const { return series_r + pulldown + pullup + clamp; }
};

/// Per-cycle energy ledger of one simulated write cycle. Energies in joules.
struct EnergyReport {
  double e_from_vdd{};
  double e_from_bias_net{};  // signed; negative means the bias node absorbed energy
  double q_from_bias_net{};  // signed charge drawn from the bias node [C]
  Dissipation dissipated;
  double delta_e_stored{};
  double e_conventional{};
  double savings_fraction{};
  double ledger_residual{};  // |supplied - dissipated - stored| / e_conventional
};

/// C * V_DD^2: a full discharge + recharge of the bitline from the rail.
double conventional_energy(double c_total, double v_dd);

/// Trapezoidal integration of source and dissipation powers over the trace.
/// Throws LedgerError unless the trace is one complete write cycle ending near V_DD.
EnergyReport resonant_energy(const WaveformTrace& trace, const RlcParams& params, const PhaseConfig& phases);

struct WriteCycle {
  double vsr_width{};
  PulseSchedule schedule;
  ControlWaveforms control;
  WaveformTrace trace;
  EnergyReport energy;
};

/// Measures the current zero on a probe run, sets the SD delay to it, and simulates a full
/// cycle at `clock_period`. `dt` <= 0 selects default_dt.
WriteCycle run_tuned_write_cycle(const RlcParams& params, const PhaseConfig& phases, double clock_period,
                                 double dt = 0.0);

/// Same cycle with the VSR width forced to `vsr_width` (mistuning studies).
WriteCycle run_write_cycle(const RlcParams& params, const PhaseConfig& phases, double clock_period,
                           double vsr_width, double dt = 0.0);

}  // namespace resram
