#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sg/config.hpp"
#include "sg/detector.hpp"

namespace sg {

using json = nlohmann::ordered_json;

// Runs the configured models once at the configured spin preparation and
// returns a summary in which every comparison names its oracle and tolerance.
// Artifacts (simulate.json) are written under cfg.out_dir.
json run_simulate(const ScenarioConfig& cfg);

// Runs every configured model over the theta sweep, classifies the arrival
// records, and writes sweep.json + sweep.csv. Optionally exposes the raw
// records.
json run_sweep(const ScenarioConfig& cfg,
               std::vector<DetectorRecord>* records_out = nullptr);

// Full four-model sweep, classification, and the feature-comparison table;
// writes table1.json, table1.txt, table1.csv. The rendered table is also
// returned through table_out when given.
json run_table1(const ScenarioConfig& cfg, std::string* table_out = nullptr);

// Samples the SG field on the configured grid. field_sel: b | a | e;
// format: binary | csv. Writes to out_path and returns a small manifest.
json run_dump_field(const ScenarioConfig& cfg, const std::string& field_sel,
                    const std::string& format, const std::string& out_path);

void write_json_file(const json& j, const std::string& path);

}  // namespace sg
