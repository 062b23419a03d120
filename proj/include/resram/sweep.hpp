#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resram/array_model.hpp"
#include "resram/circuit.hpp"
#include "resram/sizing.hpp"
#include "resram/transient.hpp"

namespace resram {

/// Process corner as scalar multipliers on every resistance and capacitance.
struct Corner {
  std::string name{"TT"};
  double r_multiplier{1.0};
  double c_multiplier{1.0};
  bool operator==(const Corner&) const = default;
};

std::vector<Corner> default_corners();  // TT (1, 1), FF (0.85, 0.95), SS (1.25, 1.05)

struct SweepRanges {
  std::vector<int> bits;
  std::vector<int> rows;
  std::vector<double> inductance;
  std::vector<double> v_dd;
  std::vector<Corner> corners;
};

struct SweepRow {
  int bits{};
  int rows{};
  double inductance{};
  double v_dd{};
  std::string corner;
  double r_total{};
  double capacitance{};
  std::optional<double> l_min;  // size_inductor at this point; empty when infeasible
  DerivedResonance derived;
  std::optional<double> swing_fraction;
  std::optional<double> savings_fraction;
  std::string status{"ok"};
};

struct SweepOptions {
  SizingSpec sizing;
  double series_switch_on_resistance{0.0};
  bool simulate{true};   // savings_fraction needs a transient run per point
  unsigned threads{0};   // 0 = hardware concurrency
};

/// Every combination in (bits, rows, inductance, v_dd, corner) order, outer to inner.
/// Per-point failures are recorded in `status`; the sweep never aborts on them.
std::vector<SweepRow> sweep_design_space(const ArrayGeometry& geometry, const SweepRanges& ranges,
                                         const SweepOptions& options);

SweepRow evaluate_point(const ArrayGeometry& geometry, int bits, int rows, double inductance, double v_dd,
                        const Corner& corner, const SweepOptions& options);

}  // namespace resram
