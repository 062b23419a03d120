#include "resram/energy.hpp"

#include <cmath>

#include "resram/errors.hpp"

namespace resram {

double conventional_energy(double c_total, double v_dd) {
  detail::require_positive(c_total, "c_total");
  if (!(std::isfinite(v_dd) && v_dd >= 0.0)) throw ParameterDomainError("v_dd must be >= 0");
  return c_total * v_dd * v_dd;
}

EnergyReport resonant_energy(const WaveformTrace& trace, const RlcParams& params, const PhaseConfig& phases) {
  validate(params);
  validate(phases);
  const auto& s = trace.samples;
  if (s.size() < 2) throw LedgerError("trace is empty");

  bool saw_discharge = false, saw_recovery = false;
  for (const auto& x : s) {
    saw_discharge |= x.phase == Phase::discharge;
    saw_recovery |= x.phase == Phase::recovery;
  }
  if (!saw_discharge || !saw_recovery) throw LedgerError("trace lacks a discharge or recovery phase");
  if (s.back().v_c < 0.99 * params.v_dd)
    throw LedgerError("trace does not end at V_DD (incomplete write cycle)");

  const double r_series = params.r_total + phases.series_switch_on_resistance;
  const double v_dd = params.v_dd;
  EnergyReport e;
  double q_out = 0.0;  // charge pushed into the bias node through the inductor

  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const auto& a = s[k];
    const auto& b = s[k + 1];
    const double h = b.t - a.t;
    switch (b.phase) {
      case Phase::discharge:
      case Phase::recovery: {
        const double ia = a.phase == b.phase ? a.i_l : 0.0;  // inductor idle before the window
        const double ib = b.i_l;
        e.dissipated.series_r += 0.5 * h * r_series * (ia * ia + ib * ib);
        q_out += 0.5 * h * (ia + ib);
        break;
      }
      case Phase::pulldown:
        e.dissipated.pulldown += 0.5 * h * (a.v_c * a.v_c + b.v_c * b.v_c) / phases.pulldown_resistance;
        break;
      case Phase::pullup: {
        const double da = v_dd - a.v_c, db = v_dd - b.v_c;
        e.dissipated.pullup += 0.5 * h * (da * da + db * db) / phases.pullup_resistance;
        e.e_from_vdd += 0.5 * h * v_dd * (da + db) / phases.pullup_resistance;
        break;
      }
      case Phase::hold:
        break;
    }
    if (is_resonant(a.phase) && b.phase != a.phase)
      e.dissipated.clamp += 0.5 * params.inductance * a.i_l * a.i_l;
  }

  e.q_from_bias_net = -q_out;
  e.e_from_bias_net = -params.v_bias * q_out;
  const double i_end = is_resonant(s.back().phase) ? s.back().i_l : 0.0;
  e.delta_e_stored = 0.5 * params.capacitance * (s.back().v_c * s.back().v_c - s.front().v_c * s.front().v_c) +
                     0.5 * params.inductance * (i_end * i_end - s.front().i_l * s.front().i_l);
  e.e_conventional = conventional_energy(params.capacitance, v_dd);
  e.savings_fraction = 1.0 - (e.e_from_vdd + e.e_from_bias_net) / e.e_conventional;
  e.ledger_residual =
      std::abs(e.e_from_vdd + e.e_from_bias_net - e.dissipated.total() - e.delta_e_stored) / e.e_conventional;
  return e;
}

WriteCycle run_write_cycle(const RlcParams& params, const PhaseConfig& phases, double clock_period,
                           double vsr_width, double dt) {
  if (dt <= 0.0) dt = default_dt(params, phases);
  WriteCycle w;
  w.vsr_width = vsr_width;
  w.schedule = tuned_schedule(clock_period, vsr_width);
  w.control = build_control(w.schedule, true);
  w.trace = simulate_write_cycle(params, phases, w.control, dt);
  w.energy = resonant_energy(w.trace, params, phases);
  return w;
}

WriteCycle run_tuned_write_cycle(const RlcParams& params, const PhaseConfig& phases, double clock_period,
                                 double dt) {
  if (dt <= 0.0) dt = default_dt(params, phases);
  const auto width = auto_tune_vsr_width(params, phases, dt);
  if (!width) throw UnsupportedRegimeError("no inductor current zero: tank does not ring");
  return run_write_cycle(params, phases, clock_period, *width, dt);
}

}  // namespace resram
