#include "resram/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "resram/errors.hpp"
#include "resram/units.hpp"

namespace resram {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

enum class Range { any, positive, nonneg, unit_open, count, code4 };

void check_range(double v, Range range) {
  switch (range) {
    case Range::any: return;
    case Range::positive:
      if (!(v > 0.0)) throw std::invalid_argument("must be > 0");
      return;
    case Range::nonneg:
      if (!(v >= 0.0)) throw std::invalid_argument("must be >= 0");
      return;
    case Range::unit_open:
      if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("must lie in (0, 1)");
      return;
    case Range::count:
      if (!(v >= 1.0)) throw std::invalid_argument("must be >= 1");
      return;
    case Range::code4:
      if (!(v >= 0.0 && v <= 15.0)) throw std::invalid_argument("must be in 0..15");
      return;
  }
}

int parse_int(std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

template <typename Member>
Field real(std::string key, Unit unit, Range range, Member member) {
  return {std::move(key),
          [=](RunConfig& c, std::string_view v) {
            const double x = parse_quantity(v, unit);
            check_range(x, range);
            member(c) = x;
          },
          [=](const RunConfig& c) -> std::optional<std::string> {
            return format_exact(member(c));
          }};
}

template <typename Member>
Field optional_real(std::string key, Unit unit, Range range, Member member) {
  return {std::move(key),
          [=](RunConfig& c, std::string_view v) {
            const double x = parse_quantity(v, unit);
            check_range(x, range);
            member(c) = x;
          },
          [=](const RunConfig& c) -> std::optional<std::string> {
            const auto& o = member(c);
            if (!o) return std::nullopt;
            return format_exact(*o);
          }};
}

template <typename Member>
Field integer(std::string key, Range range, Member member) {
  return {std::move(key),
          [=](RunConfig& c, std::string_view v) {
            const int x = parse_int(v);
            check_range(x, range);
            member(c) = x;
          },
          [=](const RunConfig& c) -> std::optional<std::string> {
            return std::to_string(member(c));
          }};
}

const std::vector<Field>& fields() {
  using U = Unit;
  using R = Range;
  static const std::vector<Field> table = {
      optional_real("circuit.r_total", U::ohm, R::positive, [](auto& c) -> auto& { return c.circuit.r_total; }),
      optional_real("circuit.r_mos", U::ohm, R::nonneg, [](auto& c) -> auto& { return c.circuit.r_mos; }),
      optional_real("circuit.r_wire", U::ohm, R::nonneg, [](auto& c) -> auto& { return c.circuit.r_wire; }),
      optional_real("circuit.r_inductor", U::ohm, R::nonneg,
                    [](auto& c) -> auto& { return c.circuit.r_inductor; }),
      optional_real("circuit.inductance", U::henry, R::positive,
                    [](auto& c) -> auto& { return c.circuit.inductance; }),
      optional_real("circuit.capacitance", U::farad, R::positive,
                    [](auto& c) -> auto& { return c.circuit.capacitance; }),
      real("circuit.v_dd", U::volt, R::positive, [](auto& c) -> auto& { return c.circuit.v_dd; }),
      optional_real("circuit.v_bias", U::volt, R::nonneg, [](auto& c) -> auto& { return c.circuit.v_bias; }),

      integer("geometry.rows", R::count, [](auto& c) -> auto& { return c.geometry.rows; }),
      integer("geometry.columns", R::count, [](auto& c) -> auto& { return c.geometry.columns; }),
      integer("geometry.mux_factor", R::count, [](auto& c) -> auto& { return c.geometry.mux_factor; }),
      real("geometry.cap_per_column", U::farad, R::positive,
           [](auto& c) -> auto& { return c.geometry.cap_per_column; }),
      real("geometry.cap_per_row_increment", U::farad, R::positive,
           [](auto& c) -> auto& { return c.geometry.cap_per_row_increment; }),
      real("geometry.driver_resistance_per_bit", U::ohm, R::positive,
           [](auto& c) -> auto& { return c.geometry.driver_resistance_per_bit; }),
      real("geometry.shared_inductance", U::henry, R::positive,
           [](auto& c) -> auto& { return c.geometry.shared_inductance; }),
      real("geometry.inductor_parasitic_resistance", U::ohm, R::nonneg,
           [](auto& c) -> auto& { return c.geometry.inductor_parasitic_resistance; }),
      optional_real("geometry.total_capacitance", U::farad, R::positive,
                    [](auto& c) -> auto& { return c.geometry.total_capacitance; }),

      real("schedule.clock_period", U::second, R::positive,
           [](auto& c) -> auto& { return c.schedule.clock_period; }),
      real("schedule.s_rise", U::second, R::nonneg, [](auto& c) -> auto& { return c.schedule.s_rise; }),
      real("schedule.s_fall", U::second, R::positive, [](auto& c) -> auto& { return c.schedule.s_fall; }),
      integer("schedule.delay_code", R::code4, [](auto& c) -> auto& { return c.schedule.delay_code; }),
      real("schedule.base_delay", U::second, R::nonneg, [](auto& c) -> auto& { return c.schedule.base_delay; }),
      real("schedule.delay_step", U::second, R::nonneg, [](auto& c) -> auto& { return c.schedule.delay_step; }),

      real("phases.series_switch_on_resistance", U::ohm, R::nonneg,
           [](auto& c) -> auto& { return c.phases.series_switch_on_resistance; }),
      optional_real("phases.pulldown_resistance", U::ohm, R::positive,
                    [](auto& c) -> auto& { return c.phases.pulldown_resistance; }),
      optional_real("phases.pullup_resistance", U::ohm, R::positive,
                    [](auto& c) -> auto& { return c.phases.pullup_resistance; }),
      optional_real("phases.booster.inductance", U::henry, R::positive,
                    [](auto& c) -> auto& { return c.phases.booster_inductance; }),
      optional_real("phases.booster.gate_capacitance", U::farad, R::positive,
                    [](auto& c) -> auto& { return c.phases.booster_gate_capacitance; }),
      optional_real("phases.booster.series_resistance", U::ohm, R::nonneg,
                    [](auto& c) -> auto& { return c.phases.booster_series_resistance; }),

      real("sizing.target_swing_fraction", U::none, R::unit_open,
           [](auto& c) -> auto& { return c.sizing.target_swing_fraction; }),
      real("sizing.max_t_r_half", U::second, R::positive,
           [](auto& c) -> auto& { return c.sizing.max_t_r_half; }),
      real("sizing.f_min", U::hertz, R::positive, [](auto& c) -> auto& { return c.sizing.f_min; }),
      real("sizing.f_max", U::hertz, R::positive, [](auto& c) -> auto& { return c.sizing.f_max; }),
      integer("sizing.bits_connected", R::count, [](auto& c) -> auto& { return c.sizing.bits_connected; }),

      real("simulation.dt", U::second, R::nonneg, [](auto& c) -> auto& { return c.simulation.dt; }),
      {"simulation.auto_tune", [](RunConfig& c, std::string_view v) { c.simulation.auto_tune = parse_bool(v); },
       [](const RunConfig& c) -> std::optional<std::string> {
         return std::string(c.simulation.auto_tune ? "true" : "false");
       }},

      {"output.format",
       [](RunConfig& c, std::string_view v) {
         const std::string f(trim(v));
         if (f != "csv" && f != "json" && f != "table")
           throw std::invalid_argument("must be one of csv, json, table");
         c.output.format = f;
       },
       [](const RunConfig& c) -> std::optional<std::string> {
         if (c.output.format.empty()) return std::nullopt;
         return c.output.format;
       }},
      {"output.path", [](RunConfig& c, std::string_view v) { c.output.path = std::string(trim(v)); },
       [](const RunConfig& c) -> std::optional<std::string> {
         if (c.output.path.empty()) return std::nullopt;
         return c.output.path;
       }},
  };
  return table;
}

bool valid_corner_name(std::string_view name) {
  if (name.empty()) return false;
  for (char ch : name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) return false;
  return true;
}

}  // namespace

void apply_setting(RunConfig& config, std::string_view key_in, std::string_view value) {
  const std::string key(trim(key_in));
  try {
    for (const auto& f : fields()) {
      if (f.key == key) {
        f.set(config, value);
        return;
      }
    }
    if (key.starts_with("corners.")) {
      const auto rest = std::string_view(key).substr(8);
      const auto dot = rest.rfind('.');
      if (dot != std::string_view::npos) {
        const std::string name(rest.substr(0, dot));
        const auto field = rest.substr(dot + 1);
        if (valid_corner_name(name) && (field == "r_multiplier" || field == "c_multiplier")) {
          const double x = parse_quantity(value, Unit::none);
          check_range(x, Range::positive);
          auto& corner = config.corners[name];
          corner.name = name;
          (field == "r_multiplier" ? corner.r_multiplier : corner.c_multiplier) = x;
          return;
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
  throw ConfigError(key, "unknown key");
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
  validate(config);
  return config;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) {
    if (f.key.starts_with("simulation.")) continue;  // emitted after corners below
    if (auto v = f.get(config)) out.emplace_back(f.key, *v);
  }
  for (const auto& [name, corner] : config.corners) {
    out.emplace_back("corners." + name + ".r_multiplier", format_exact(corner.r_multiplier));
    out.emplace_back("corners." + name + ".c_multiplier", format_exact(corner.c_multiplier));
  }
  for (const auto& f : fields())
    if (f.key.starts_with("simulation."))
      if (auto v = f.get(config)) out.emplace_back(f.key, *v);
  return out;
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream os;
  for (const auto& [k, v] : config_entries(config)) os << k << " = " << v << '\n';
  return os.str();
}

void validate(const RunConfig& c) {
  try {
    validate(c.geometry);
    connected_columns(c.geometry);
  } catch (const std::exception& e) {
    throw ConfigError("geometry", e.what());
  }
  try {
    validate(c.schedule);
  } catch (const std::exception& e) {
    throw ConfigError("schedule", e.what());
  }
  try {
    validate(c.sizing);
  } catch (const std::exception& e) {
    throw ConfigError("sizing", e.what());
  }
  const bool any_booster = c.phases.booster_inductance || c.phases.booster_gate_capacitance ||
                           c.phases.booster_series_resistance;
  if (any_booster && !(c.phases.booster_inductance && c.phases.booster_gate_capacitance))
    throw ConfigError("phases.booster", "booster needs both inductance and gate_capacitance");
  try {
    validate(resolve_circuit(c));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("circuit", e.what());
  }
}

RlcParams resolve_circuit(const RunConfig& c) {
  RlcParams p = effective_params(c.geometry, c.circuit.v_dd);
  const auto& cs = c.circuit;
  if (cs.r_mos || cs.r_wire || cs.r_inductor) {
    ResistanceBreakdown parts{cs.r_mos.value_or(0.0), cs.r_wire.value_or(0.0), cs.r_inductor.value_or(0.0)};
    p.r_breakdown = parts;
    p.r_total = parts.sum();
    if (cs.r_total && std::abs(*cs.r_total - p.r_total) > 1e-12 * *cs.r_total)
      throw ConfigError("circuit.r_total", "does not equal r_mos + r_wire + r_inductor");
  } else if (cs.r_total) {
    p.r_total = *cs.r_total;
    p.r_breakdown.reset();
  }
  if (cs.inductance) p.inductance = *cs.inductance;
  if (cs.capacitance) p.capacitance = *cs.capacitance;
  p.v_bias = cs.v_bias.value_or(cs.v_dd / 2.0);
  return p;
}

PhaseConfig resolve_phases(const RunConfig& c) {
  const double lumped = c.geometry.driver_resistance_per_bit / connected_columns(c.geometry);
  PhaseConfig p;
  p.series_switch_on_resistance = c.phases.series_switch_on_resistance;
  p.pulldown_resistance = c.phases.pulldown_resistance.value_or(lumped);
  p.pullup_resistance = c.phases.pullup_resistance.value_or(lumped);
  if (c.phases.booster_inductance && c.phases.booster_gate_capacitance)
    p.booster = BoosterConfig{*c.phases.booster_inductance, *c.phases.booster_gate_capacitance,
                              c.phases.booster_series_resistance.value_or(0.0)};
  return p;
}

}  // namespace resram
