#include "resram/transient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "resram/errors.hpp"

namespace resram {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

std::vector<Window> merge_segments(const std::vector<double>& cuts, const auto& predicate) {
  std::vector<Window> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (!(b > a) || !predicate(0.5 * (a + b))) continue;
    if (!out.empty() && out.back().end == a)
      out.back().end = b;
    else
      out.push_back({a, b});
  }
  return out;
}

struct StepPlan {
  Phase phase{Phase::hold};
  int vsr_window{-1};
  bool pulldown{false};
  bool pullup{false};
};

std::size_t snap(double t, double dt, std::size_t n_total) {
  const double k = std::round(t / dt);
  if (k <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(k), n_total);
}

}  // namespace

void validate(const PulseSchedule& s) {
  auto fail = [](const std::string& what) { throw ScheduleError("pulse schedule: " + what); };
  if (!(std::isfinite(s.clock_period) && s.clock_period > 0.0)) fail("clock_period must be > 0");
  if (!finite_nonneg(s.s_rise) || !(s.s_rise < s.s_fall) || !(s.s_fall < s.clock_period))
    fail("need 0 <= s_rise < s_fall < clock_period");
  if (s.delay_code < 0 || s.delay_code > 15) fail("delay_code must be in 0..15");
  if (!finite_nonneg(s.base_delay) || !finite_nonneg(s.delay_step)) fail("delays must be >= 0");
  const double d = s.delay();
  if (s.s_fall + d > s.clock_period * (1.0 + 1e-12)) fail("s_fall + delay exceeds the clock period");
  if (!(d < s.s_fall - s.s_rise)) fail("SD delay must be shorter than the S pulse");
}

int nearest_delay_code(const PulseSchedule& schedule, double target) {
  int best = 0;
  double best_err = std::abs(schedule.base_delay - target);
  for (int code = 1; code <= 15; ++code) {
    const double err = std::abs(schedule.base_delay + code * schedule.delay_step - target);
    if (err < best_err) {
      best = code;
      best_err = err;
    }
  }
  return best;
}

ControlWaveforms build_control(const PulseSchedule& schedule, bool strict) {
  validate(schedule);
  const double d = schedule.delay();
  if (strict && d == 0.0) throw ScheduleError("pulse schedule: zero SD delay leaves no VSR pulse");

  auto s = [&](double t) { return t >= schedule.s_rise && t < schedule.s_fall; };
  auto sd = [&](double t) { return t >= schedule.s_rise + d && t < schedule.s_fall + d; };

  std::vector<double> cuts{0.0, schedule.s_rise, schedule.s_fall, schedule.s_rise + d, schedule.s_fall + d,
                           schedule.clock_period};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  ControlWaveforms c;
  c.clock_period = schedule.clock_period;
  c.vsr_windows = merge_segments(cuts, [&](double t) { return s(t) != sd(t); });
  c.vdn_windows = merge_segments(cuts, [&](double t) { return s(t) && sd(t); });

  double last = 0.0;
  for (const auto& w : c.vsr_windows) last = std::max(last, w.end);
  for (const auto& w : c.vdn_windows) last = std::max(last, w.end);
  if (last < schedule.clock_period) c.pullup_windows.push_back({last, schedule.clock_period});
  return c;
}

void validate(const PhaseConfig& p) {
  if (!finite_nonneg(p.series_switch_on_resistance))
    throw ParameterDomainError("series_switch_on_resistance must be >= 0");
  detail::require_positive(p.pulldown_resistance, "pulldown_resistance");
  detail::require_positive(p.pullup_resistance, "pullup_resistance");
  if (p.booster) {
    detail::require_positive(p.booster->inductance, "booster.inductance");
    detail::require_positive(p.booster->gate_capacitance, "booster.gate_capacitance");
    if (!finite_nonneg(p.booster->series_resistance))
      throw ParameterDomainError("booster.series_resistance must be >= 0");
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::hold: return "hold";
    case Phase::discharge: return "discharge";
    case Phase::pulldown: return "pulldown";
    case Phase::recovery: return "recovery";
    case Phase::pullup: return "pullup";
  }
  return "hold";
}

bool is_resonant(Phase phase) { return phase == Phase::discharge || phase == Phase::recovery; }

AffineSystem<double, 2> state_equations(const RlcParams& params, const Topology& topo) {
  const double c = params.capacitance;
  const double l = params.inductance;
  AffineSystem<double, 2> sys;
  // C dv/dt = -i_series - g_pd v + g_pu (v_dd - v)
  sys.a(0, 0) = -(topo.pulldown_conductance + topo.pullup_conductance) / c;
  sys.b(0) = topo.pullup_conductance * params.v_dd / c;
  if (topo.series_closed) {
    // L di/dt = v - v_bias - R i
    sys.a(0, 1) = -1.0 / c;
    sys.a(1, 0) = 1.0 / l;
    sys.a(1, 1) = -topo.series_resistance / l;
    sys.b(1) = -params.v_bias / l;
  }
  return sys;
}

std::vector<State> integrate_phase(const State& initial, const RlcParams& params, const Topology& topology,
                                   double duration, double dt) {
  detail::require_positive(params.inductance, "inductance");
  detail::require_positive(params.capacitance, "capacitance");
  if (!finite_nonneg(duration)) throw ParameterDomainError("duration must be >= 0");
  detail::require_positive(dt, "dt");

  std::vector<State> out{initial};
  if (duration == 0.0) return out;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(duration / dt)));
  const double h = duration / static_cast<double>(steps);
  const auto sys = state_equations(params, topology);
  out.reserve(steps + 1);
  State x = initial;
  for (std::size_t k = 0; k < steps; ++k) {
    x = rk4_step(sys, x, h);
    if (!x.allFinite()) throw DivergenceError("state became non-finite during integration");
    out.push_back(x);
  }
  return out;
}

namespace {

double booster_period(const BoosterConfig& b) {
  return 2.0 * std::numbers::pi * std::sqrt(b.inductance * b.gate_capacitance);
}

}  // namespace

double default_dt(const RlcParams& params, const PhaseConfig& phases) {
  const auto d = derive_resonance(params);
  double dt = d.underdamped ? *d.t_r / 1e4 : params.inductance / params.r_total / 1e3;
  const double tau_rail = std::min(phases.pulldown_resistance, phases.pullup_resistance) * params.capacitance;
  dt = std::min(dt, tau_rail / 20.0);
  if (phases.booster) dt = std::min(dt, booster_period(*phases.booster) / 1e3);
  return dt;
}

WaveformTrace simulate_write_cycle(const RlcParams& params, const PhaseConfig& phases,
                                   const ControlWaveforms& control, double dt) {
  validate(params);
  validate(phases);
  if (!(std::isfinite(dt) && dt > 0.0)) throw StepSizeError("dt must be finite and > 0");
  if (!(std::isfinite(control.clock_period) && control.clock_period > 0.0))
    throw ScheduleError("control: clock_period must be > 0");

  {
    const auto d = derive_resonance(params);
    const double limit = d.underdamped ? *d.t_r / 1000.0 : params.inductance / params.r_total / 100.0;
    const double tau_rail = std::min(phases.pulldown_resistance, phases.pullup_resistance) * params.capacitance;
    std::ostringstream os;
    if (dt > limit * (1.0 + 1e-9)) {
      os << "dt = " << dt << " s exceeds the resonance limit " << limit << " s";
      throw StepSizeError(os.str());
    }
    if (dt > tau_rail / 5.0) {
      os << "dt = " << dt << " s exceeds the rail time-constant limit " << tau_rail / 5.0 << " s";
      throw StepSizeError(os.str());
    }
    if (phases.booster && dt > booster_period(*phases.booster) / 100.0)
      throw StepSizeError("dt too large for the booster tank");
  }

  const double period = control.clock_period;
  const auto n_total = static_cast<std::size_t>(std::max(1.0, std::round(period / dt)));

  auto check_windows = [&](const std::vector<Window>& ws, const char* name) {
    double prev_end = -1.0;
    for (const auto& w : ws) {
      if (!(w.start >= 0.0) || !(w.end > w.start) || w.end > period * (1.0 + 1e-12))
        throw ScheduleError(std::string("control: ") + name + " window outside the clock period");
      if (w.start < prev_end) throw ScheduleError(std::string("control: ") + name + " windows overlap or are unsorted");
      prev_end = w.end;
    }
  };
  check_windows(control.vsr_windows, "VSR");
  check_windows(control.vdn_windows, "VDN");
  check_windows(control.pullup_windows, "pull-up");

  std::vector<StepPlan> plan(n_total);
  for (std::size_t w = 0; w < control.vsr_windows.size(); ++w) {
    const auto a = snap(control.vsr_windows[w].start, dt, n_total);
    const auto b = snap(control.vsr_windows[w].end, dt, n_total);
    for (auto k = a; k < b; ++k) plan[k].vsr_window = static_cast<int>(w);
  }
  for (const auto& win : control.vdn_windows)
    for (auto k = snap(win.start, dt, n_total); k < snap(win.end, dt, n_total); ++k) plan[k].pulldown = true;
  for (const auto& win : control.pullup_windows)
    for (auto k = snap(win.start, dt, n_total); k < snap(win.end, dt, n_total); ++k) plan[k].pullup = true;

  for (auto& step : plan) {
    const int active = (step.vsr_window >= 0) + step.pulldown + step.pullup;
    if (active > 1) throw ScheduleError("control: VSR, VDN and pull-up windows overlap");
    if (step.vsr_window >= 0)
      step.phase = step.vsr_window == 0 ? Phase::discharge : Phase::recovery;
    else if (step.pulldown)
      step.phase = Phase::pulldown;
    else if (step.pullup)
      step.phase = Phase::pullup;
  }

  const double r_series = params.r_total + phases.series_switch_on_resistance;
  auto topology_for = [&](const StepPlan& step) {
    Topology t;
    t.series_closed = step.vsr_window >= 0;
    t.series_resistance = r_series;
    t.pulldown_conductance = step.pulldown ? 1.0 / phases.pulldown_resistance : 0.0;
    t.pullup_conductance = step.pullup ? 1.0 / phases.pullup_resistance : 0.0;
    return t;
  };

  std::optional<AffineSystem<double, 2>> booster_sys;
  if (phases.booster) {
    const auto& b = *phases.booster;
    booster_sys.emplace();
    booster_sys->a << 0.0, 1.0 / b.gate_capacitance, -1.0 / b.inductance, -b.series_resistance / b.inductance;
    booster_sys->b << 0.0, params.v_dd / b.inductance;
  }

  WaveformTrace trace;
  trace.dt = dt;
  trace.samples.reserve(n_total + 1);
  State x(params.v_dd, 0.0);
  Eigen::Vector2d gate = Eigen::Vector2d::Zero();
  trace.samples.push_back({0.0, x(0), x(1), plan.front().phase});

  const AffineSystem<double, 2> hold_sys = state_equations(params, Topology{});
  AffineSystem<double, 2> sys = hold_sys;
  int prev_window = -1;
  std::optional<Phase> prev_phase;

  for (std::size_t k = 0; k < n_total; ++k) {
    const auto& step = plan[k];
    const double t0 = static_cast<double>(k) * dt;
    if (!prev_phase || *prev_phase != step.phase || prev_window != step.vsr_window) {
      if (prev_window >= 0 && step.vsr_window != prev_window) {
        // Series switch opens: any residual inductor current is dumped into the clamp.
        if (x(1) != 0.0) trace.events.push_back({t0, EventKind::clamp, *prev_phase, x(1)});
        x(1) = 0.0;
      }
      if (step.vsr_window >= 0 && step.vsr_window != prev_window) {
        gate.setZero();
        if (booster_sys) trace.booster_peaks.push_back(0.0);
      }
      if (prev_phase) trace.events.push_back({t0, EventKind::phase_change, step.phase, 0.0});
      sys = state_equations(params, topology_for(step));
      prev_phase = step.phase;
      prev_window = step.vsr_window;
    }

    const double i_prev = x(1);
    x = rk4_step(sys, x, dt);
    if (!x.allFinite()) throw DivergenceError("bitline state became non-finite");
    const double t1 = static_cast<double>(k + 1) * dt;

    if (step.vsr_window >= 0) {
      if ((i_prev > 0.0 && x(1) <= 0.0) || (i_prev < 0.0 && x(1) >= 0.0)) {
        const double tz = t0 + dt * i_prev / (i_prev - x(1));
        trace.events.push_back({tz, EventKind::current_zero, step.phase, 0.0});
      }
      if (booster_sys) {
        gate = rk4_step(*booster_sys, gate, dt);
        if (!gate.allFinite()) throw DivergenceError("booster state became non-finite");
        trace.booster_peaks.back() = std::max(trace.booster_peaks.back(), gate(0));
      }
    }
    trace.samples.push_back({t1, x(0), x(1), step.phase});
  }
  return trace;
}

std::optional<double> find_current_zero(const WaveformTrace& trace) {
  const auto& s = trace.samples;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (!is_resonant(s[k + 1].phase)) continue;
    const double a = s[k].i_l, b = s[k + 1].i_l;
    if ((a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0)) return s[k].t + (s[k + 1].t - s[k].t) * a / (a - b);
  }
  return std::nullopt;
}

WaveformTrace probe_discharge(const RlcParams& params, const PhaseConfig& phases, double dt) {
  const auto d = derive_resonance(params);
  const double duration =
      d.underdamped ? 0.75 * *d.t_r : 4.0 * std::numbers::pi * std::sqrt(params.inductance * params.capacitance);
  ControlWaveforms control;
  control.clock_period = duration;
  control.vsr_windows.push_back({0.0, duration});
  PhaseConfig probe_phases = phases;
  probe_phases.booster.reset();
  return simulate_write_cycle(params, probe_phases, control, dt);
}

std::optional<double> auto_tune_vsr_width(const RlcParams& params, const PhaseConfig& phases, double dt) {
  return find_current_zero(probe_discharge(params, phases, dt));
}

PulseSchedule tuned_schedule(double clock_period, double vsr_width) {
  PulseSchedule s;
  s.clock_period = clock_period;
  s.s_rise = 0.0;
  s.s_fall = 0.5 * clock_period;
  s.delay_code = 0;
  s.base_delay = vsr_width;
  s.delay_step = 0.0;
  return s;
}

}  // namespace resram
