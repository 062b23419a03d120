#include "resram/report.hpp"

#include <algorithm>
#include <sstream>

#include "resram/units.hpp"

namespace resram {

namespace {

double round6(double v) { return std::stod(format_sig6(v)); }

Json opt_quantity(const std::optional<double>& v, std::string_view unit) {
  return v ? quantity(*v, unit) : Json(nullptr);
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_sig6(*v) : ""; }

}  // namespace

void write_trace_csv(std::ostream& os, const WaveformTrace& trace) {
  os << "t,v_c,i_l,phase\n";
  for (const auto& s : trace.samples)
    os << format_sig6(s.t) << ',' << format_sig6(s.v_c) << ',' << format_sig6(s.i_l) << ',' << to_string(s.phase)
       << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "bits,rows,inductance,v_dd,corner,r_total,capacitance,l_min,"
        "f_r,t_r_half,swing_fraction,q_f,savings_fraction,underdamped,status\n";
  for (const auto& r : rows) {
    os << r.bits << ',' << r.rows << ',' << format_sig6(r.inductance) << ',' << format_sig6(r.v_dd) << ','
       << r.corner << ',' << format_sig6(r.r_total) << ',' << format_sig6(r.capacitance) << ',' << opt_cell(r.l_min)
       << ',' << opt_cell(r.derived.f_r) << ',' << opt_cell(r.derived.t_r_half) << ','
       << opt_cell(r.swing_fraction) << ',' << format_sig6(r.derived.q_f) << ',' << opt_cell(r.savings_fraction)
       << ',' << (r.derived.underdamped ? "true" : "false") << ',';
    // status may carry an exception message; keep it one CSV field
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    os << status << '\n';
  }
}

Json quantity(double value, std::string_view unit) {
  Json j;
  j["value"] = round6(value);
  j["unit"] = std::string(unit);
  return j;
}

Json to_json(const RlcParams& p) {
  Json j;
  j["r_total"] = quantity(p.r_total, "ohm");
  if (p.r_breakdown) {
    j["r_mos"] = quantity(p.r_breakdown->r_mos, "ohm");
    j["r_wire"] = quantity(p.r_breakdown->r_wire, "ohm");
    j["r_inductor"] = quantity(p.r_breakdown->r_inductor, "ohm");
  }
  j["inductance"] = quantity(p.inductance, "H");
  j["capacitance"] = quantity(p.capacitance, "F");
  j["v_dd"] = quantity(p.v_dd, "V");
  j["v_bias"] = quantity(p.v_bias, "V");
  return j;
}

Json to_json(const DerivedResonance& d) {
  Json j;
  j["underdamped"] = d.underdamped;
  j["alpha"] = quantity(d.alpha, "1/s");
  j["omega_d"] = opt_quantity(d.omega_d, "rad/s");
  j["f_r"] = opt_quantity(d.f_r, "Hz");
  j["t_r"] = opt_quantity(d.t_r, "s");
  j["t_r_half"] = opt_quantity(d.t_r_half, "s");
  j["q_f"] = quantity(d.q_f, "1");
  return j;
}

Json to_json(const SwingReport& s) {
  Json j;
  j["v_ol"] = quantity(s.v_ol, "V");
  j["v_oh"] = quantity(s.v_oh, "V");
  j["v_rsw"] = quantity(s.v_rsw, "V");
  j["swing_fraction"] = quantity(s.swing_fraction, "1");
  return j;
}

Json to_json(const EnergyReport& e) {
  Json j;
  j["scope"] = "bitline mechanism only (periphery, decoder and clock power excluded)";
  j["e_from_vdd"] = quantity(e.e_from_vdd, "J");
  j["e_from_bias_net"] = quantity(e.e_from_bias_net, "J");
  j["q_from_bias_net"] = quantity(e.q_from_bias_net, "C");
  Json d;
  d["series_r"] = quantity(e.dissipated.series_r, "J");
  d["pulldown"] = quantity(e.dissipated.pulldown, "J");
  d["pullup"] = quantity(e.dissipated.pullup, "J");
  d["clamp"] = quantity(e.dissipated.clamp, "J");
  j["e_dissipated"] = d;
  j["delta_e_stored"] = quantity(e.delta_e_stored, "J");
  j["e_conventional"] = quantity(e.e_conventional, "J");
  j["savings_fraction"] = quantity(e.savings_fraction, "1");
  j["ledger_residual"] = quantity(e.ledger_residual, "1");
  return j;
}

Json to_json(const SizingResult& s) {
  Json j;
  j["feasible"] = s.feasible;
  j["binding_constraint"] = std::string(to_string(s.binding));
  j["inductance"] = quantity(s.inductance, "H");
  if (s.inductance > 0.0) {
    j["r_total"] = quantity(s.params.r_total, "ohm");
    j["capacitance"] = quantity(s.params.capacitance, "F");
    j["t_r_half"] = opt_quantity(s.derived.t_r_half, "s");
    j["q_f"] = quantity(s.derived.q_f, "1");
    j["swing_fraction"] = quantity(s.swing_fraction, "1");
  }
  if (!s.message.empty()) j["message"] = s.message;
  return j;
}

Json to_json(const std::vector<SweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["bits"] = r.bits;
    j["rows"] = r.rows;
    j["inductance"] = quantity(r.inductance, "H");
    j["v_dd"] = quantity(r.v_dd, "V");
    j["corner"] = r.corner;
    j["r_total"] = quantity(r.r_total, "ohm");
    j["capacitance"] = quantity(r.capacitance, "F");
    j["l_min"] = opt_quantity(r.l_min, "H");
    j["f_r"] = opt_quantity(r.derived.f_r, "Hz");
    j["t_r_half"] = opt_quantity(r.derived.t_r_half, "s");
    j["swing_fraction"] = opt_quantity(r.swing_fraction, "1");
    j["q_f"] = quantity(r.derived.q_f, "1");
    j["savings_fraction"] = opt_quantity(r.savings_fraction, "1");
    j["underdamped"] = r.derived.underdamped;
    j["status"] = r.status;
    arr.push_back(j);
  }
  return arr;
}

Json to_json(const std::vector<Table1Row>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["mux_factor"] = r.mux_factor;
    j["columns"] = r.columns;
    j["total_cap"] = quantity(r.total_cap, "F");
    j["inductance"] = quantity(r.inductance, "H");
    j["r_total"] = quantity(r.r_total, "ohm");
    j["t_r_half"] = opt_quantity(r.derived.t_r_half, "s");
    j["underdamped"] = r.derived.underdamped;
    arr.push_back(j);
  }
  return arr;
}

Json config_json(const RunConfig& config) {
  Json j = Json::object();
  for (const auto& [k, v] : config_entries(config)) j[k] = v;
  return j;
}

std::vector<std::string> config_warnings(const RunConfig& c) {
  std::vector<std::string> w;
  if (!c.circuit.r_total && !c.circuit.r_mos && !c.circuit.r_wire && !c.circuit.r_inductor)
    w.push_back("R_T is an assumed default: driver_resistance_per_bit / connected columns + inductor parasitic");
  if (!c.phases.pulldown_resistance || !c.phases.pullup_resistance)
    w.push_back("rail-completion resistances default to the lumped driver resistance");
  if (c.geometry.inductor_parasitic_resistance == 0.0)
    w.push_back("inductor parasitic resistance is 0 (not characterized)");
  if (mux_division_inexact(c.geometry))
    w.push_back("columns not divisible by mux_factor; connected columns rounded down");
  return w;
}

std::string render(const TextTable& t, bool color) {
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());

  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string cell = i < cells.size() ? cells[i] : "";
      if (i) os << "  ";
      os << std::string(width[i] - cell.size(), ' ') << cell;
    }
    os << '\n';
  };
  if (color) os << "\033[1m";
  line(t.header);
  if (color) os << "\033[0m";
  for (const auto& row : t.rows) line(row);
  return os.str();
}

}  // namespace resram
