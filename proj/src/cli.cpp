#include "resram/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "resram/config.hpp"
#include "resram/energy.hpp"
#include "resram/errors.hpp"
#include "resram/report.hpp"
#include "resram/units.hpp"

namespace resram {

namespace {

constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::string output;
  std::string format;
  std::vector<std::string> sets;
  bool quiet{false};
  bool no_meta{false};
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig load_config(const Globals& g) {
  RunConfig c = g.config_path.empty() ? RunConfig{} : parse_config(read_file(g.config_path));
  for (const auto& kv : g.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(kv, "--set expects key=value");
    apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!g.output.empty()) c.output.path = g.output;
  if (!g.format.empty()) c.output.format = g.format;
  validate(c);
  return c;
}

/// Writes to the configured path, or to `out` when none is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : path_(path), out_(out) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path_ + "'");
    f << text;
    if (!f) throw IoError("write failed for '" + path_ + "'");
  }

  bool to_terminal() const { return path_.empty() && &out_ == &std::cout && ::isatty(1); }

 private:
  std::string path_;
  std::ostream& out_;
};

bool use_color(const Sink& sink) { return sink.to_terminal() && std::getenv("NO_COLOR") == nullptr; }

Json report_skeleton(const Globals& g, const RunConfig& c) {
  Json j;
  if (!g.no_meta) j["meta"] = Json{{"tool", "resram"}, {"version", kVersion}};
  j["config"] = config_json(c);
  j["derived"] = nullptr;
  j["energy"] = nullptr;
  j["sizing"] = nullptr;
  j["warnings"] = config_warnings(c);
  return j;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_sig6(*v) : "-"; }

int cmd_derive(const Globals& g, std::ostream& out) {
  const RunConfig c = load_config(g);
  const RlcParams p = resolve_circuit(c);
  const DerivedResonance d = derive_resonance(p);
  const double l_min = min_inductance(p.r_total, p.capacitance);
  std::optional<SwingReport> s;
  if (d.underdamped) s = swing(p);

  const std::string fmt = c.output.format.empty() ? "table" : c.output.format;
  Sink sink(c.output.path, out);
  if (fmt == "json") {
    Json j = report_skeleton(g, c);
    Json derived = to_json(d);
    derived["min_inductance"] = quantity(l_min, "H");
    derived["circuit"] = to_json(p);
    if (s) derived["swing"] = to_json(*s);
    j["derived"] = derived;
    sink.write(j.dump(2) + "\n");
  } else if (fmt == "csv") {
    std::ostringstream os;
    os << "r_total,inductance,capacitance,v_dd,alpha,f_r,t_r_half,q_f,underdamped,min_inductance,swing_fraction\n";
    os << format_sig6(p.r_total) << ',' << format_sig6(p.inductance) << ',' << format_sig6(p.capacitance) << ','
       << format_sig6(p.v_dd) << ',' << format_sig6(d.alpha) << ',' << (d.f_r ? format_sig6(*d.f_r) : "") << ','
       << (d.t_r_half ? format_sig6(*d.t_r_half) : "") << ',' << format_sig6(d.q_f) << ','
       << (d.underdamped ? "true" : "false") << ',' << format_sig6(l_min) << ','
       << (s ? format_sig6(s->swing_fraction) : "") << '\n';
    sink.write(os.str());
  } else {
    TextTable t{{"quantity", "value", "unit"}, {}};
    t.rows.push_back({"r_total", format_sig6(p.r_total), "ohm"});
    t.rows.push_back({"inductance", format_sig6(p.inductance), "H"});
    t.rows.push_back({"capacitance", format_sig6(p.capacitance), "F"});
    t.rows.push_back({"v_dd", format_sig6(p.v_dd), "V"});
    t.rows.push_back({"underdamped", d.underdamped ? "true" : "false", ""});
    t.rows.push_back({"alpha", format_sig6(d.alpha), "1/s"});
    t.rows.push_back({"f_r", fmt_opt(d.f_r), "Hz"});
    t.rows.push_back({"t_r_half", fmt_opt(d.t_r_half), "s"});
    t.rows.push_back({"q_f", format_sig6(d.q_f), ""});
    t.rows.push_back({"min_inductance", format_sig6(l_min), "H"});
    if (s) {
      t.rows.push_back({"v_ol", format_sig6(s->v_ol), "V"});
      t.rows.push_back({"v_oh", format_sig6(s->v_oh), "V"});
      t.rows.push_back({"swing_fraction", format_sig6(s->swing_fraction), ""});
    }
    sink.write(render(t, use_color(sink)));
  }
  return exit_ok;
}

int cmd_table1(const Globals& g, std::ostream& out) {
  const RunConfig c = load_config(g);
  const double l = c.circuit.inductance.value_or(c.geometry.shared_inductance);
  const auto rows = table1(l, reference_table1_configs(), c.geometry.driver_resistance_per_bit,
                           c.geometry.inductor_parasitic_resistance);
  const std::string fmt = c.output.format.empty() ? "table" : c.output.format;
  Sink sink(c.output.path, out);
  if (fmt == "json") {
    Json j = report_skeleton(g, c);
    j["derived"] = Json{{"table1", to_json(rows)}};
    sink.write(j.dump(2) + "\n");
    return exit_ok;
  }
  if (fmt == "csv") {
    std::ostringstream os;
    os << "mux_factor,columns,total_cap,inductance,r_total,t_r_half\n";
    for (const auto& r : rows)
      os << r.mux_factor << ',' << r.columns << ',' << format_sig6(r.total_cap) << ',' << format_sig6(r.inductance)
         << ',' << format_sig6(r.r_total) << ',' << fmt_opt(r.derived.t_r_half) << '\n';
    sink.write(os.str());
    return exit_ok;
  }
  TextTable t{{"MUX", "columns", "total cap (pF)", "L (nH)", "R_T (ohm)", "T_R/2 (ps)"}, {}};
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.1f", r.derived.t_r_half ? *r.derived.t_r_half * 1e12 : 0.0);
    t.rows.push_back({std::to_string(r.mux_factor), std::to_string(r.columns), format_sig6(r.total_cap * 1e12),
                      format_sig6(r.inductance * 1e9), format_sig6(r.r_total),
                      r.derived.t_r_half ? std::string(buf) : "overdamped"});
  }
  sink.write(render(t, use_color(sink)));
  return exit_ok;
}

int cmd_simulate(const Globals& g, const std::string& report_path, bool dry_run, std::ostream& out,
                 std::ostream& err) {
  const RunConfig c = load_config(g);
  const RlcParams p = resolve_circuit(c);
  const PhaseConfig phases = resolve_phases(c);
  if (dry_run) return exit_ok;

  const double dt = c.simulation.dt > 0.0 ? c.simulation.dt : default_dt(p, phases);
  PulseSchedule schedule = c.schedule;
  Json tuning;
  if (c.simulation.auto_tune) {
    const auto width = auto_tune_vsr_width(p, phases, dt);
    if (!width) throw UnsupportedRegimeError("auto-tune found no inductor current zero (overdamped tank)");
    tuning["measured_vsr_width"] = quantity(*width, "s");
    tuning["nearest_delay_code"] = nearest_delay_code(c.schedule, *width);
    schedule.base_delay = *width;
    schedule.delay_step = 0.0;
    schedule.delay_code = 0;
  }
  tuning["vsr_width"] = quantity(schedule.delay(), "s");
  tuning["dt"] = quantity(dt, "s");

  const ControlWaveforms control = build_control(schedule, true);
  const WaveformTrace trace = simulate_write_cycle(p, phases, control, dt);
  const EnergyReport energy = resonant_energy(trace, p, phases);

  std::ostringstream csv;
  write_trace_csv(csv, trace);
  Sink(c.output.path, out).write(csv.str());

  Json j = report_skeleton(g, c);
  Json derived = to_json(derive_resonance(p));
  derived["circuit"] = to_json(p);
  derived["tuning"] = tuning;
  if (!trace.booster_peaks.empty()) {
    Json peaks = Json::array();
    for (double v : trace.booster_peaks) peaks.push_back(quantity(v, "V"));
    derived["booster_peaks"] = peaks;
  }
  double v_end_discharge = p.v_dd;
  for (const auto& s : trace.samples)
    if (s.phase == Phase::discharge) v_end_discharge = s.v_c;
  derived["v_c_end_discharge"] = quantity(v_end_discharge, "V");
  derived["v_c_final"] = quantity(trace.samples.back().v_c, "V");
  j["derived"] = derived;
  j["energy"] = to_json(energy);
  if (energy.dissipated.clamp > 1e-6 * energy.e_conventional)
    j["warnings"].push_back("series switch opened with nonzero inductor current (mistuned VSR width)");

  if (!report_path.empty()) {
    Sink(report_path, out).write(j.dump(2) + "\n");
  } else if (!c.output.path.empty()) {
    out << j.dump(2) << '\n';
  }
  if (!g.quiet && !c.output.path.empty()) err << "wrote " << trace.samples.size() << " samples to " << c.output.path << '\n';
  return exit_ok;
}

int cmd_size(const Globals& g, std::ostream& out) {
  const RunConfig c = load_config(g);
  const SizingResult r = size_inductor(c.geometry, c.sizing, c.circuit.v_dd);
  const std::string fmt = c.output.format.empty() ? "table" : c.output.format;
  Sink sink(c.output.path, out);
  if (fmt == "json") {
    Json j = report_skeleton(g, c);
    j["sizing"] = to_json(r);
    sink.write(j.dump(2) + "\n");
  } else if (fmt == "csv") {
    std::ostringstream os;
    os << "feasible,binding_constraint,inductance,r_total,capacitance,t_r_half,q_f,swing_fraction\n";
    os << (r.feasible ? "true" : "false") << ',' << to_string(r.binding) << ',' << format_sig6(r.inductance) << ','
       << format_sig6(r.params.r_total) << ',' << format_sig6(r.params.capacitance) << ','
       << fmt_opt(r.derived.t_r_half) << ',' << format_sig6(r.derived.q_f) << ',' << format_sig6(r.swing_fraction)
       << '\n';
    sink.write(os.str());
  } else {
    TextTable t{{"quantity", "value", "unit"}, {}};
    t.rows.push_back({"feasible", r.feasible ? "true" : "false", ""});
    t.rows.push_back({"binding_constraint", std::string(to_string(r.binding)), ""});
    t.rows.push_back({"bits_connected", std::to_string(c.sizing.bits_connected), ""});
    t.rows.push_back({"inductance", format_sig6(r.inductance), "H"});
    t.rows.push_back({"r_total", format_sig6(r.params.r_total), "ohm"});
    t.rows.push_back({"capacitance", format_sig6(r.params.capacitance), "F"});
    t.rows.push_back({"t_r_half", fmt_opt(r.derived.t_r_half), "s"});
    t.rows.push_back({"q_f", format_sig6(r.derived.q_f), ""});
    t.rows.push_back({"swing_fraction", format_sig6(r.swing_fraction), ""});
    sink.write(render(t, use_color(sink)));
  }
  if (!r.feasible) throw Infeasible("binding constraint " + std::string(to_string(r.binding)) + ": " + r.message);
  return exit_ok;
}

struct SweepFlags {
  std::vector<int> bits;
  std::vector<int> rows;
  std::vector<std::string> inductance;
  std::vector<std::string> v_dd;
  std::vector<std::string> corners;
  unsigned threads{0};
  bool no_sim{false};
};

int cmd_sweep(const Globals& g, const SweepFlags& f, std::ostream& out) {
  const RunConfig c = load_config(g);
  SweepRanges ranges;
  ranges.bits = f.bits.empty() ? std::vector<int>{c.sizing.bits_connected} : f.bits;
  ranges.rows = f.rows.empty() ? std::vector<int>{c.geometry.rows} : f.rows;
  if (f.inductance.empty()) {
    ranges.inductance = {c.geometry.shared_inductance};
  } else {
    for (const auto& s : f.inductance) {
      try {
        ranges.inductance.push_back(parse_quantity(s, Unit::henry));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--inductance", e.what());
      }
    }
  }
  if (f.v_dd.empty()) {
    ranges.v_dd = {c.circuit.v_dd};
  } else {
    for (const auto& s : f.v_dd) {
      try {
        ranges.v_dd.push_back(parse_quantity(s, Unit::volt));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("--vdd", e.what());
      }
    }
  }
  const std::vector<std::string> names = f.corners.empty() ? std::vector<std::string>{"TT"} : f.corners;
  for (const auto& n : names) {
    const auto it = c.corners.find(n);
    if (it == c.corners.end()) throw ConfigError("--corners", "unknown corner '" + n + "'");
    ranges.corners.push_back(it->second);
  }

  SweepOptions opt;
  opt.sizing = c.sizing;
  opt.series_switch_on_resistance = c.phases.series_switch_on_resistance;
  opt.simulate = !f.no_sim;
  opt.threads = f.threads;
  const auto rows = sweep_design_space(c.geometry, ranges, opt);

  const std::string fmt = c.output.format.empty() ? "csv" : c.output.format;
  Sink sink(c.output.path, out);
  if (fmt == "json") {
    Json j = report_skeleton(g, c);
    j["sizing"] = Json{{"sweep", to_json(rows)}};
    sink.write(j.dump(2) + "\n");
  } else if (fmt == "table") {
    TextTable t{{"bits", "rows", "L", "v_dd", "corner", "l_min", "t_r_half", "q_f", "swing", "savings", "status"}, {}};
    for (const auto& r : rows)
      t.rows.push_back({std::to_string(r.bits), std::to_string(r.rows), format_sig6(r.inductance),
                        format_sig6(r.v_dd), r.corner, fmt_opt(r.l_min), fmt_opt(r.derived.t_r_half),
                        format_sig6(r.derived.q_f), fmt_opt(r.swing_fraction), fmt_opt(r.savings_fraction),
                        r.status});
    sink.write(render(t, use_color(sink)));
  } else {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    sink.write(os.str());
  }
  return exit_ok;
}

void fail_line(std::ostream& err, const char* kind, const std::string& what) {
  std::string one = what;
  for (auto& ch : one)
    if (ch == '\n') ch = ' ';
  err << "error: " << kind << ": " << one << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Series-resonant SRAM bitline simulator and inductor sizing tool", "resram"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "Run configuration file (flat key = value)");
  app.add_option("--output", g.output, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--set", g.sets, "Override a config key: --set circuit.inductance=0.621nH");
  app.add_flag("--quiet", g.quiet, "Suppress informational messages");
  app.add_flag("--no-meta", g.no_meta, "Omit the run-metadata header from reports");

  auto* derive = app.add_subcommand("derive", "Resonance quantities of the configured tank");
  auto* t1 = app.add_subcommand("table1", "Half-period versus MUX configuration at a fixed inductor");
  auto* sim = app.add_subcommand("simulate", "Simulate one write cycle; trace CSV plus energy report JSON");
  std::string report_path;
  bool dry_run = false;
  sim->add_option("--report", report_path, "Energy report JSON path");
  sim->add_flag("--dry-run", dry_run, "Validate the configuration and exit");
  auto* size = app.add_subcommand("size", "Smallest inductor meeting swing and timing targets");
  auto* sweep = app.add_subcommand("sweep", "Design-space sweep over bits, rows, L, V_DD and corners");
  SweepFlags sf;
  sweep->add_option("--bits", sf.bits, "Bits on the shared node")->delimiter(',');
  sweep->add_option("--rows", sf.rows, "Rows per bitline")->delimiter(',');
  sweep->add_option("--inductance", sf.inductance, "Inductances, e.g. 0.3nH,0.6nH")->delimiter(',');
  sweep->add_option("--vdd", sf.v_dd, "Supply voltages, e.g. 0.9V,1.1V")->delimiter(',');
  sweep->add_option("--corners", sf.corners, "Corner names from the config (default TT)")->delimiter(',');
  sweep->add_option("--threads", sf.threads, "Worker threads (0 = all cores)");
  sweep->add_flag("--no-sim", sf.no_sim, "Skip the transient run (no savings column)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    fail_line(err, "usage", e.what());
    return exit_usage;
  }

  try {
    if (derive->parsed()) return cmd_derive(g, out);
    if (t1->parsed()) return cmd_table1(g, out);
    if (sim->parsed()) return cmd_simulate(g, report_path, dry_run, out, err);
    if (size->parsed()) return cmd_size(g, out);
    if (sweep->parsed()) return cmd_sweep(g, sf, out);
  } catch (const ConfigError& e) {
    fail_line(err, "config", e.what());
    return exit_usage;
  } catch (const IoError& e) {
    fail_line(err, "io", e.what());
    return exit_io;
  } catch (const Infeasible& e) {
    fail_line(err, "infeasible", e.what());
    return exit_infeasible;
  } catch (const std::exception& e) {
    fail_line(err, "model", e.what());
    return exit_model;
  }
  return exit_usage;
}

}  // namespace resram
