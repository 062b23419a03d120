#include "resram/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "resram/energy.hpp"
#include "resram/errors.hpp"
#include "resram/waveforms.hpp"

namespace resram {

std::vector<Corner> default_corners() { return {{"TT", 1.0, 1.0}, {"FF", 0.85, 0.95}, {"SS", 1.25, 1.05}}; }

SweepRow evaluate_point(const ArrayGeometry& geometry, int bits, int rows, double inductance, double v_dd,
                        const Corner& corner, const SweepOptions& options) {
  SweepRow row;
  row.bits = bits;
  row.rows = rows;
  row.inductance = inductance;
  row.v_dd = v_dd;
  row.corner = corner.name;
  try {
    ArrayGeometry g = geometry;
    g.rows = rows;
    g.columns = bits;
    g.mux_factor = 1;
    g.total_capacitance.reset();
    g.cap_per_column = column_capacitance(geometry, rows) * corner.c_multiplier;
    g.driver_resistance_per_bit *= corner.r_multiplier;
    g.inductor_parasitic_resistance *= corner.r_multiplier;
    g.shared_inductance = inductance;

    const RlcParams p = sizing_params(g, bits, inductance, v_dd);
    row.r_total = p.r_total;
    row.capacitance = p.capacitance;
    row.derived = derive_resonance(p);

    SizingSpec spec = options.sizing;
    spec.bits_connected = bits;
    const auto sized = size_inductor(g, spec, v_dd);
    if (sized.feasible) row.l_min = sized.inductance;

    if (!row.derived.underdamped) {
      row.status = "overdamped";
      return row;
    }
    row.swing_fraction = swing(p).swing_fraction;
    if (options.simulate) {
      PhaseConfig phases;
      phases.series_switch_on_resistance = options.series_switch_on_resistance;
      phases.pulldown_resistance = g.driver_resistance_per_bit / bits;
      phases.pullup_resistance = g.driver_resistance_per_bit / bits;
      const auto cycle = run_tuned_write_cycle(p, phases, 1.0 / options.sizing.f_max);
      row.savings_fraction = cycle.energy.savings_fraction;
    }
    if (!sized.feasible) row.status = "sizing_infeasible:" + std::string(to_string(sized.binding));
  } catch (const std::exception& e) {
    row.status = std::string("error:") + e.what();
  }
  return row;
}

std::vector<SweepRow> sweep_design_space(const ArrayGeometry& geometry, const SweepRanges& ranges,
                                         const SweepOptions& options) {
  if (ranges.bits.empty() || ranges.rows.empty() || ranges.inductance.empty() || ranges.v_dd.empty() ||
      ranges.corners.empty())
    throw ParameterDomainError("every sweep range must be nonempty");

  struct Point {
    int bits, rows;
    double l, v;
    const Corner* corner;
  };
  std::vector<Point> points;
  for (int b : ranges.bits)
    for (int r : ranges.rows)
      for (double l : ranges.inductance)
        for (double v : ranges.v_dd)
          for (const auto& c : ranges.corners) points.push_back({b, r, l, v, &c});

  std::vector<SweepRow> out(points.size());
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto& pt = points[i];
      out[i] = evaluate_point(geometry, pt.bits, pt.rows, pt.l, pt.v, *pt.corner, options);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace resram
