#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "resram/array_model.hpp"
#include "resram/circuit.hpp"
#include "resram/config.hpp"
#include "resram/energy.hpp"
#include "resram/sizing.hpp"
#include "resram/sweep.hpp"
#include "resram/transient.hpp"
#include "resram/waveforms.hpp"

namespace resram {

using Json = nlohmann::ordered_json;

/// `t,v_c,i_l,phase`, one row per sample, 6 significant digits.
void write_trace_csv(std::ostream& os, const WaveformTrace& trace);

/// Swept variables, then l_min and the derived columns, then status.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// {"value": <6 significant digits>, "unit": unit}
Json quantity(double value, std::string_view unit);

Json to_json(const RlcParams& params);
Json to_json(const DerivedResonance& derived);
Json to_json(const SwingReport& swing);
Json to_json(const EnergyReport& energy);
Json to_json(const SizingResult& sizing);
Json to_json(const std::vector<SweepRow>& rows);
Json to_json(const std::vector<Table1Row>& rows);
Json config_json(const RunConfig& config);

/// Assumptions and anomalies worth surfacing in every report header.
std::vector<std::string> config_warnings(const RunConfig& config);

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Column-aligned plain text; bold header when `color` is set.
std::string render(const TextTable& table, bool color);

}  // namespace resram
