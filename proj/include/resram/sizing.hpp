#pragma once

#include <string>
#include <string_view>

#include "resram/array_model.hpp"
#include "resram/circuit.hpp"

namespace resram {

struct SizingSpec {
  double target_swing_fraction{2.0 / 3.0};
  double max_t_r_half{100e-12};
  double f_min{200e6};
  double f_max{1e9};
  int bits_connected{256};

  bool operator==(const SizingSpec&) const = default;
};

void validate(const SizingSpec& spec);

enum class SizingConstraint { none, swing, max_t_r_half, clock_fit };

std::string_view to_string(SizingConstraint c);

struct SizingResult {
  bool feasible{false};
  double inductance{};  // smallest L meeting the lower (swing) bound, even when infeasible
  RlcParams params;
  DerivedResonance derived;
  double swing_fraction{};
  SizingConstraint binding{SizingConstraint::none};
  std::string message;
};

/// Tank seen by the inductor when `bits` drivers share it: C = bits * cap_per_column,
/// R_T = driver_resistance_per_bit / bits + inductor parasitic.
RlcParams sizing_params(const ArrayGeometry& geometry, int bits, double inductance, double v_dd);

/// Closed-form smallest L whose swing fraction reaches `target` at fixed R and C.
double swing_bound_inductance(double r_total, double capacitance, double target);

/// Smallest L (log grid, then bisection) that rings with swing >= target, then checked
/// against the discharge-time budget and 2 * T_R/2 <= 1 / f_max.
SizingResult size_inductor(const ArrayGeometry& geometry, const SizingSpec& spec, double v_dd);

}  // namespace resram
