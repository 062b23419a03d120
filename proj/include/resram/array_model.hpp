#pragma once

// SRAM organization -> lumped tank. All connected write drivers sit in parallel
// behind one shared inductor, so N columns give N-fold capacitance and 1/N driver
// resistance.

#include <optional>
#include <vector>

#include "resram/circuit.hpp"

namespace resram {

struct ArrayGeometry {
  int rows{512};
  int columns{256};
  int mux_factor{1};
  double cap_per_column{39.45e-15};        // at `rows` rows
  double cap_per_row_increment{0.06e-15};  // marginal bitcell load per row
  double driver_resistance_per_bit{128.0};
  double shared_inductance{0.621e-9};
  double inductor_parasitic_resistance{0.0};
  // When set, wins over connected_columns * cap_per_column.
  std::optional<double> total_capacitance;

  bool operator==(const ArrayGeometry&) const = default;
};

void validate(const ArrayGeometry& geometry);

/// columns / mux_factor, rounded down. Throws GeometryError when zero.
int connected_columns(const ArrayGeometry& geometry);

/// True when columns is not an exact multiple of mux_factor.
bool mux_division_inexact(const ArrayGeometry& geometry);

/// Capacitance of one column when the bitline carries `rows` cells.
double column_capacitance(const ArrayGeometry& geometry, int rows);

RlcParams effective_params(const ArrayGeometry& geometry, double v_dd);

struct Table1Input {
  int mux_factor{};
  int columns{};
  double total_cap{};
};

struct Table1Row {
  int mux_factor{};
  int columns{};
  double total_cap{};
  double inductance{};
  double r_total{};
  DerivedResonance derived;
};

/// Half-period per MUX configuration at a fixed inductor. R_T follows the geometry's
/// per-bit driver resistance divided over the listed columns, plus inductor parasitic.
std::vector<Table1Row> table1(double inductance, const std::vector<Table1Input>& rows,
                              double driver_resistance_per_bit, double inductor_parasitic_resistance);

/// The three reference MUX configurations (1/256/10.10 pF, 2/126/5.07 pF, 4/64/2.53 pF).
std::vector<Table1Input> reference_table1_configs();

struct RowSweepPoint {
  int rows{};
  double capacitance{};
  DerivedResonance derived;
};

std::vector<RowSweepPoint> discharge_time_vs_rows(const ArrayGeometry& geometry, const std::vector<int>& rows_list,
                                                  double v_dd);

}  // namespace resram
