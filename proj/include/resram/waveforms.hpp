#pragma once

// Closed-form ring-down of the series tank from the discharge archetype:
// capacitor at v_dd, zero inductor current, bias source at v_bias.
// i_L is positive when current flows out of the bitline toward the bias node.

#include <cmath>

#include "resram/circuit.hpp"

namespace resram {

enum class WaveformVariant {
  ode_consistent,  ///< exact solution of the KVL loop equation (default)
  cosine_form,     ///< cosine in both correction terms; does not satisfy the loop equation
};

template <typename Scalar>
struct SwingReportT {
  Scalar v_ol{};
  Scalar v_oh{};
  Scalar v_rsw{};
  Scalar swing_fraction{};
};

using SwingReport = SwingReportT<double>;

namespace detail {

template <typename Scalar>
DerivedResonanceT<Scalar> require_underdamped(const RlcParamsT<Scalar>& p) {
  auto d = derive_resonance(p);
  if (!d.underdamped)
    throw UnsupportedRegimeError("closed-form waveforms require an underdamped tank (L > R^2 C / 4)");
  return d;
}

template <typename Scalar>
void require_time(Scalar t) {
  using std::isfinite;
  if (!isfinite(t) || t < Scalar(0)) throw ParameterDomainError("t must be finite and >= 0");
}

}  // namespace detail

template <typename Scalar>
Scalar inductor_current(const RlcParamsT<Scalar>& p, Scalar t) {
  using std::exp;
  using std::sin;
  using std::sqrt;
  const auto d = detail::require_underdamped(p);
  detail::require_time(t);
  const Scalar q = d.q_f;
  // (V_DD - V_bias) / (sqrt(L/C) sqrt(1 - 1/4Q^2)) == (V_DD - V_bias) / (L omega_d)
  const Scalar amplitude = (p.v_dd - p.v_bias) /
                           (sqrt(p.inductance / p.capacitance) * sqrt(Scalar(1) - Scalar(1) / (Scalar(4) * q * q)));
  return amplitude * exp(-t * p.r_total / (Scalar(2) * p.inductance)) * sin(*d.omega_d * t);
}

template <typename Scalar>
Scalar cap_voltage(const RlcParamsT<Scalar>& p, Scalar t,
                   WaveformVariant variant = WaveformVariant::ode_consistent) {
  using std::cos;
  using std::exp;
  using std::sin;
  const auto d = detail::require_underdamped(p);
  detail::require_time(t);
  const Scalar envelope = exp(-t * p.r_total / (Scalar(2) * p.inductance));
  const Scalar phase = *d.omega_d * t;
  if (variant == WaveformVariant::cosine_form) {
    const Scalar half = p.v_dd / Scalar(2);
    return half + half * envelope * cos(phase) - (Scalar(1) / (Scalar(2) * d.q_f)) * half * envelope * cos(phase);
  }
  const Scalar step = p.v_dd - p.v_bias;
  return p.v_bias + step * envelope * (cos(phase) + (d.alpha / *d.omega_d) * sin(phase));
}

/// Resonant swing extrema: V_OL after the discharge half-cycle, V_OH after the
/// recovery half-cycle that rings up from 0 toward the bias node.
template <typename Scalar>
SwingReportT<Scalar> swing(const RlcParamsT<Scalar>& p) {
  const auto d = detail::require_underdamped(p);
  const Scalar rho = half_cycle_retention(d.q_f);
  SwingReportT<Scalar> s;
  s.v_ol = p.v_bias - (p.v_dd - p.v_bias) * rho;
  s.v_oh = p.v_bias + p.v_bias * rho;
  s.v_rsw = s.v_oh - s.v_ol;
  s.swing_fraction = s.v_rsw / p.v_dd;
  return s;
}

}  // namespace resram
