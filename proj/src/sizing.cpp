#include "resram/sizing.hpp"

#include <cmath>
#include <sstream>

#include "resram/errors.hpp"
#include "resram/waveforms.hpp"

namespace resram {

void validate(const SizingSpec& s) {
  if (!(s.target_swing_fraction > 0.0 && s.target_swing_fraction < 1.0))
    throw ParameterDomainError("target_swing_fraction must lie in (0, 1)");
  if (!(s.max_t_r_half > 0.0)) throw ParameterDomainError("max_t_r_half must be > 0");
  if (!(std::isfinite(s.f_min) && s.f_min > 0.0 && std::isfinite(s.f_max) && s.f_min <= s.f_max))
    throw ParameterDomainError("need 0 < f_min <= f_max");
  if (s.bits_connected < 1) throw ParameterDomainError("bits_connected must be >= 1");
}

std::string_view to_string(SizingConstraint c) {
  switch (c) {
    case SizingConstraint::none: return "none";
    case SizingConstraint::swing: return "swing";
    case SizingConstraint::max_t_r_half: return "max_t_r_half";
    case SizingConstraint::clock_fit: return "clock_fit";
  }
  return "none";
}

RlcParams sizing_params(const ArrayGeometry& g, int bits, double inductance, double v_dd) {
  if (bits < 1) throw GeometryError("bits must be >= 1");
  ResistanceBreakdown parts;
  parts.r_mos = g.driver_resistance_per_bit / bits;
  parts.r_inductor = g.inductor_parasitic_resistance;
  return RlcParams::make(parts, inductance, bits * g.cap_per_column, v_dd);
}

double swing_bound_inductance(double r_total, double capacitance, double target) {
  detail::require_positive(r_total, "r_total");
  detail::require_positive(capacitance, "capacitance");
  const double q = q_for_retention(target);
  return q * q * r_total * r_total * capacitance;
}

namespace {

bool meets_swing(const RlcParams& p, double target) {
  return is_underdamped(p) && swing(p).swing_fraction >= target;
}

}  // namespace

SizingResult size_inductor(const ArrayGeometry& g, const SizingSpec& spec, double v_dd) {
  validate(spec);
  validate(g);
  const int bits = spec.bits_connected;
  auto at = [&](double l) { return sizing_params(g, bits, l, v_dd); };

  const RlcParams probe = at(g.shared_inductance);
  const double l_crit = min_inductance(probe.r_total, probe.capacitance);

  SizingResult r;
  // Grid: doublings above the critical inductance until the swing bound is met.
  double lo = l_crit;
  double hi = 0.0;
  for (double l = l_crit * 2.0; l < l_crit * 1e12; l *= 2.0) {
    if (meets_swing(at(l), spec.target_swing_fraction)) {
      hi = l;
      break;
    }
    lo = l;
  }
  if (hi == 0.0) {
    r.binding = SizingConstraint::swing;
    r.message = "swing target unreachable at any inductance";
    return r;
  }
  // Bisection (geometric midpoint) down to 1e-12 relative bracket width.
  while (hi / lo - 1.0 > 1e-12) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (meets_swing(at(mid), spec.target_swing_fraction) ? hi : lo) = mid;
  }

  r.inductance = hi;
  r.params = at(hi);
  r.derived = derive_resonance(r.params);
  r.swing_fraction = swing(r.params).swing_fraction;
  r.binding = SizingConstraint::swing;

  const double t_half = *r.derived.t_r_half;
  std::ostringstream os;
  if (t_half > spec.max_t_r_half) {
    r.binding = SizingConstraint::max_t_r_half;
    os << "T_R/2 = " << t_half << " s at the swing-bound inductance exceeds max_t_r_half = " << spec.max_t_r_half
       << " s";
    r.message = os.str();
    return r;
  }
  if (2.0 * t_half > 1.0 / spec.f_max) {
    r.binding = SizingConstraint::clock_fit;
    os << "2 * T_R/2 = " << 2.0 * t_half << " s does not fit the clock period at f_max = " << spec.f_max << " Hz";
    r.message = os.str();
    return r;
  }
  r.feasible = true;
  return r;
}

}  // namespace resram
