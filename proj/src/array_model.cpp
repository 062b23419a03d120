#include "resram/array_model.hpp"

#include <cmath>
#include <string>

#include "resram/errors.hpp"

namespace resram {

void validate(const ArrayGeometry& g) {
  if (g.rows < 1) throw GeometryError("rows must be >= 1");
  if (g.columns < 1) throw GeometryError("columns must be >= 1");
  if (g.mux_factor < 1) throw GeometryError("mux_factor must be >= 1");
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) throw GeometryError(std::string(name) + " must be > 0");
  };
  positive(g.cap_per_column, "cap_per_column");
  positive(g.cap_per_row_increment, "cap_per_row_increment");
  positive(g.driver_resistance_per_bit, "driver_resistance_per_bit");
  positive(g.shared_inductance, "shared_inductance");
  if (!(std::isfinite(g.inductor_parasitic_resistance) && g.inductor_parasitic_resistance >= 0.0))
    throw GeometryError("inductor_parasitic_resistance must be >= 0");
  if (g.total_capacitance) positive(*g.total_capacitance, "total_capacitance");
}

int connected_columns(const ArrayGeometry& g) {
  if (g.mux_factor < 1) throw GeometryError("mux_factor must be >= 1");
  const int n = g.columns / g.mux_factor;
  if (n < 1) throw GeometryError("no columns connected (columns < mux_factor)");
  return n;
}

bool mux_division_inexact(const ArrayGeometry& g) { return g.mux_factor > 0 && g.columns % g.mux_factor != 0; }

double column_capacitance(const ArrayGeometry& g, int rows) {
  return g.cap_per_column + static_cast<double>(rows - g.rows) * g.cap_per_row_increment;
}

RlcParams effective_params(const ArrayGeometry& g, double v_dd) {
  validate(g);
  const int n = connected_columns(g);
  const double c = g.total_capacitance ? *g.total_capacitance : n * g.cap_per_column;
  ResistanceBreakdown parts;
  parts.r_mos = g.driver_resistance_per_bit / n;
  parts.r_inductor = g.inductor_parasitic_resistance;
  return RlcParams::make(parts, g.shared_inductance, c, v_dd);
}

std::vector<Table1Input> reference_table1_configs() {
  return {{1, 256, 10.10e-12}, {2, 126, 5.07e-12}, {4, 64, 2.53e-12}};
}

std::vector<Table1Row> table1(double inductance, const std::vector<Table1Input>& rows,
                              double driver_resistance_per_bit, double inductor_parasitic_resistance) {
  std::vector<Table1Row> out;
  out.reserve(rows.size());
  for (const auto& in : rows) {
    if (in.columns < 1) throw GeometryError("table1: columns must be >= 1");
    Table1Row row;
    row.mux_factor = in.mux_factor;
    row.columns = in.columns;
    row.total_cap = in.total_cap;
    row.inductance = inductance;
    row.r_total = driver_resistance_per_bit / in.columns + inductor_parasitic_resistance;
    // v_dd does not enter the timing.
    row.derived = derive_resonance(RlcParams::make(row.r_total, inductance, in.total_cap, 1.0));
    out.push_back(row);
  }
  return out;
}

std::vector<RowSweepPoint> discharge_time_vs_rows(const ArrayGeometry& g, const std::vector<int>& rows_list,
                                                  double v_dd) {
  validate(g);
  if (rows_list.empty()) throw GeometryError("rows_list must be nonempty");
  const int n = connected_columns(g);
  const RlcParams base = effective_params(g, v_dd);
  std::vector<RowSweepPoint> out;
  out.reserve(rows_list.size());
  int prev = 0;
  for (int rows : rows_list) {
    if (rows < 1 || rows <= prev) throw GeometryError("rows_list must be positive and strictly increasing");
    prev = rows;
    const double c_col = column_capacitance(g, rows);
    if (!(c_col > 0.0)) throw GeometryError("column capacitance non-positive at " + std::to_string(rows) + " rows");
    RlcParams p = base;
    p.capacitance = n * c_col;
    out.push_back({rows, p.capacitance, derive_resonance(p)});
  }
  return out;
}

}  // namespace resram
