#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "h2grid/chain.hpp"
#include "h2grid/scenario.hpp"
#include "h2grid/synthetic.hpp"

namespace h2grid::config {

namespace fs = std::filesystem;

struct InputPaths {
  fs::path nodes;
  fs::path lines;
  fs::path generators;
  fs::path demand;
  fs::path industrial_sites;    // optional
  fs::path station_candidates;  // optional; stations are planned only when given
};

struct StationDemand {
  double truck_kwh = 1e9;
  double car_kwh = 0.0;
  double truck_turnover_kg_day = demand::kTruckTurnoverKgDay;
  double car_turnover_kg_day = demand::kCarTurnoverKgDay;
};

struct StudyConfig {
  InputPaths inputs;  // a network is loaded when `nodes` is set, otherwise generated
  synth::SyntheticSpec synthetic;
  std::uint64_t seed = 42;
  int horizon_hours = 0;  // 0: every hour in the data
  fs::path output_dir = "out";
  std::vector<scenario::Scenario> scenarios = scenario::standard_scenarios();
  std::vector<int> candidate_nodes;
  lp::Options lp;
  bool parallel = true;
  StationDemand stations;
  double wacc = 0.08;
  double ngp = 0.03;
  chain::ProductionParams production;
  chain::TruckParams trucks;
  chain::ImportSpec import;
  std::array<chain::CarrierParams, 3> carriers{chain::default_carrier_params(Carrier::LH2),
                                               chain::default_carrier_params(Carrier::GH2),
                                               chain::default_carrier_params(Carrier::LOHC)};

  bool synthetic_network() const { return inputs.nodes.empty(); }
};

// Relative paths resolve against `base_dir`. Unknown keys and type
// mismatches throw ConfigError naming the key path.
StudyConfig parse_study_config(const nlohmann::json& doc, const fs::path& base_dir);

// Throws IoError for unreadable files and ConfigError for bad content.
StudyConfig load_study_config(const fs::path& path);

// Complete document with every key; paths are written relative to `relative_to`.
nlohmann::json to_json(const StudyConfig& config, const fs::path& relative_to);

// Writes effective_config.json into the output directory.
void write_effective_config(const StudyConfig& config);

struct StudyData {
  grid::PowerSystem system;
  std::vector<demand::ConsumptionLocation> sinks;
};

StudyData load_study_data(const StudyConfig& config);
scenario::StudyInput make_study_input(const StudyConfig& config, StudyData data);

}  // namespace h2grid::config
