#pragma once

// Lumped series-resonance model of the shared-inductor bitline:
// bitline load C, series loop resistance R_T, inductor L, bias node at v_bias.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "resram/errors.hpp"

namespace resram {

template <typename Scalar>
struct ResistanceBreakdownT {
  Scalar r_mos{0};
  Scalar r_wire{0};
  Scalar r_inductor{0};

  Scalar sum() const { return r_mos + r_wire + r_inductor; }
  bool operator==(const ResistanceBreakdownT&) const = default;
};

template <typename Scalar>
struct RlcParamsT {
  Scalar r_total{};
  std::optional<ResistanceBreakdownT<Scalar>> r_breakdown;
  Scalar inductance{};
  Scalar capacitance{};
  Scalar v_dd{};
  Scalar v_bias{};

  /// Builds params with the bias node at exactly v_dd/2.
  static RlcParamsT make(Scalar r_total, Scalar inductance, Scalar capacitance, Scalar v_dd) {
    RlcParamsT p;
    p.r_total = r_total;
    p.inductance = inductance;
    p.capacitance = capacitance;
    p.v_dd = v_dd;
    p.v_bias = v_dd / Scalar(2);
    return p;
  }

  /// Builds params from a resistance breakdown; r_total is the sum.
  static RlcParamsT make(const ResistanceBreakdownT<Scalar>& parts, Scalar inductance,
                         Scalar capacitance, Scalar v_dd) {
    RlcParamsT p = make(parts.sum(), inductance, capacitance, v_dd);
    p.r_breakdown = parts;
    return p;
  }

  bool operator==(const RlcParamsT&) const = default;
};

using ResistanceBreakdown = ResistanceBreakdownT<double>;
using RlcParams = RlcParamsT<double>;

namespace detail {

template <typename Scalar>
void require_positive(Scalar value, const char* name) {
  using std::isfinite;
  if (!isfinite(value) || !(value > Scalar(0))) {
    std::ostringstream os;
    os << name << " must be finite and > 0 (got " << value << ")";
    throw ParameterDomainError(os.str());
  }
}

}  // namespace detail

/// Throws ParameterDomainError if any invariant of `params` is violated.
template <typename Scalar>
void validate(const RlcParamsT<Scalar>& params) {
  using std::abs;
  using std::isfinite;
  detail::require_positive(params.r_total, "r_total");
  detail::require_positive(params.inductance, "inductance");
  detail::require_positive(params.capacitance, "capacitance");
  detail::require_positive(params.v_dd, "v_dd");
  if (!isfinite(params.v_bias) || params.v_bias < Scalar(0) || params.v_bias > params.v_dd)
    throw ParameterDomainError("v_bias must lie in [0, v_dd]");
  if (params.r_breakdown) {
    const auto& b = *params.r_breakdown;
    if (b.r_mos < Scalar(0) || b.r_wire < Scalar(0) || b.r_inductor < Scalar(0))
      throw ParameterDomainError("r_breakdown components must be >= 0");
    if (abs(b.sum() - params.r_total) > Scalar(1e-12) * params.r_total)
      throw ParameterDomainError("r_breakdown does not sum to r_total");
  }
}

template <typename Scalar>
struct DerivedResonanceT {
  Scalar alpha{};
  Scalar q_f{};
  bool underdamped{false};
  // Present only when underdamped.
  std::optional<Scalar> omega_d;
  std::optional<Scalar> f_r;
  std::optional<Scalar> t_r;
  std::optional<Scalar> t_r_half;

  bool operator==(const DerivedResonanceT&) const = default;
};

using DerivedResonance = DerivedResonanceT<double>;

/// Critical inductance R^2 C / 4. Any strictly larger L rings.
template <typename Scalar>
Scalar min_inductance(Scalar r_total, Scalar capacitance) {
  detail::require_positive(r_total, "r_total");
  detail::require_positive(capacitance, "capacitance");
  return r_total * r_total * capacitance / Scalar(4);
}

template <typename Scalar>
bool is_underdamped(const RlcParamsT<Scalar>& p) {
  return p.inductance > p.r_total * p.r_total * p.capacitance / Scalar(4);
}

/// Damping rate, damped frequency, half-period and quality factor of the tank.
/// Overdamped (or critically damped) input is reported, not rejected.
template <typename Scalar>
DerivedResonanceT<Scalar> derive_resonance(const RlcParamsT<Scalar>& p) {
  using std::sqrt;
  validate(p);
  DerivedResonanceT<Scalar> d;
  d.alpha = p.r_total / (Scalar(2) * p.inductance);
  d.q_f = sqrt(p.inductance / p.capacitance) / p.r_total;
  d.underdamped = is_underdamped(p);
  if (d.underdamped) {
    // omega_d = sqrt(1/LC - alpha^2), factored to stay accurate near critical damping.
    const Scalar omega_0 = Scalar(1) / sqrt(p.inductance * p.capacitance);
    const Scalar ratio = d.alpha / omega_0;
    const Scalar omega_d = omega_0 * sqrt((Scalar(1) - ratio) * (Scalar(1) + ratio));
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    d.omega_d = omega_d;
    d.f_r = omega_d / two_pi;
    d.t_r = two_pi / omega_d;
    d.t_r_half = std::numbers::pi_v<Scalar> / omega_d;
  }
  return d;
}

/// Per half-cycle voltage retention exp(-pi * alpha / omega_d); also the swing fraction.
template <typename Scalar>
Scalar half_cycle_retention(Scalar q_f) {
  using std::exp;
  using std::sqrt;
  if (!(q_f > Scalar(0.5))) return Scalar(0);
  return exp(-std::numbers::pi_v<Scalar> / sqrt(Scalar(4) * q_f * q_f - Scalar(1)));
}

/// Smallest Q_f whose half-cycle retention reaches `fraction` (inverse of half_cycle_retention).
template <typename Scalar>
Scalar q_for_retention(Scalar fraction) {
  using std::log;
  using std::sqrt;
  if (!(fraction > Scalar(0)) || !(fraction < Scalar(1)))
    throw ParameterDomainError("retention fraction must lie in (0, 1)");
  const Scalar k = std::numbers::pi_v<Scalar> / (-log(fraction));  // = omega_d / alpha
  return sqrt(Scalar(1) + k * k) / Scalar(2);
}

}  // namespace resram
