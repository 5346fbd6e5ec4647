#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "h2grid/chain.hpp"
#include "h2grid/demand.hpp"
#include "h2grid/dispatch.hpp"
#include "h2grid/grid.hpp"

namespace h2grid::scenario {

enum class Spatial { Uniform, Nodal };
enum class Temporal { Flat, RealTime };

std::string_view to_string(Spatial s);
std::string_view to_string(Temporal t);

struct Scenario {
  Spatial spatial = Spatial::Uniform;
  Temporal temporal = Temporal::Flat;
  Carrier carrier = Carrier::LH2;

  // "uniform_flat", "nodal_real_time", ...; the carrier is appended when not LH2.
  std::string id() const;
};

// Parses an id produced by Scenario::id(). Throws InvalidInput.
Scenario parse_scenario(std::string_view id);

// The four spatial x temporal combinations with the given carrier.
std::vector<Scenario> standard_scenarios(Carrier carrier = Carrier::LH2);

// Electrolyzers run at full power during this share of the cheapest hours.
inline constexpr double kRealTimeHourShare = 0.70;

// Weight of each hour in the cheapest `share` of the series: 1 for the
// cheapest floor(share*H) hours, the fractional remainder for the next one,
// 0 otherwise. Ties go to the earlier hour.
std::vector<double> cheap_hour_weights(std::span<const double> prices, double share = kRealTimeHourShare);

// Price-weighted mean under cheap_hour_weights.
double cheap_hour_mean(std::span<const double> prices, double share = kRealTimeHourShare);

struct Baseline {
  dispatch::AnnualDispatchSummary uniform;
  dispatch::AnnualDispatchSummary nodal;
};

// Hourly price series per node (EUR/MWh) seen by electrolyzers under the
// spatial signal. Uniform: the system price at every node. Throws MissingSeries.
std::vector<std::vector<double>> price_series(const Baseline& baseline, Spatial spatial, int num_nodes);

// Production-side tariffs per node and the downstream tariff, in EUR/kWh.
// Throws IncompleteBaseline.
chain::TariffMap derive_tariffs(const Baseline& baseline, const Scenario& scenario, int num_nodes, double ngp = 0.03);

// Added electric load [hour][node] in MW. `series` is indexed [node][hour]
// and required only for real-time operation (throws MissingSeries).
grid::DemandSeries electrolyzer_loads(const chain::ChainDesign& design, const Scenario& scenario,
                                      std::span<const std::vector<double>> series, double ec_kwh_per_kg,
                                      int num_nodes, int hours);

// Scales every renewable series by (R + added)/R where R is the renewable
// energy over the system horizon. Throws CannotScale.
grid::PowerSystem additionality_scale(const grid::PowerSystem& system, double added_mwh);

struct StudyInput {
  grid::PowerSystem system;
  std::vector<demand::ConsumptionLocation> sinks;
  std::vector<int> candidate_nodes;  // empty: every grid node
  std::array<chain::CarrierParams, 3> carriers{chain::default_carrier_params(Carrier::LH2),
                                               chain::default_carrier_params(Carrier::GH2),
                                               chain::default_carrier_params(Carrier::LOHC)};
  chain::ProductionParams production;
  chain::TruckParams trucks;
  chain::ImportSpec import;
  double wacc = 0.08;
  double ngp = 0.03;
  std::vector<Scenario> scenarios = standard_scenarios();
  dispatch::RunOptions run;
  lp::Options chain_lp;
};

struct ReportRow {
  std::string scenario;
  double demand_twh = 0.0;          // annualized
  double mean_price_eur_mwh = 0.0;
  double congestion_cost_meur = 0.0;  // annualized
  double delta_demand_pct = 0.0;
  double delta_price_pct = 0.0;
  double delta_congestion_pct = 0.0;
};

struct SitingRow {
  int node = 0;
  bool is_import = false;
  int open = 0;
  double production_kg_day = 0.0;
  double load_mw = 0.0;            // mean added electric load
  double tariff_eur_mwh = 0.0;
  double price_spread_eur_mwh = 0.0;  // baseline mean nodal minus mean uniform price
};

struct ScenarioResult {
  Scenario scenario;
  chain::TariffMap tariffs;
  chain::ChainDesign design;
  chain::CostBreakdown end_use;  // per kg of total demand, stations included
  std::vector<SitingRow> siting;
  double added_mwh = 0.0;        // over the horizon
  double renewable_scale = 1.0;
};

struct StudyReport {
  int hours = 0;
  std::vector<ReportRow> rows;  // baseline first, then scenarios in input order
  std::vector<ScenarioResult> scenarios;
  std::vector<double> price_spread_eur_mwh;  // per node
};

// Percentage change; 0 when both are zero, NaN when only the base is zero.
double delta_pct(double value, double base);

ReportRow make_row(const std::string& name, const dispatch::AnnualDispatchSummary& summary, int hours);

// Baseline dispatch in both modes, then per scenario: tariffs, chain design,
// electrolyzer loads, renewable scaling and a uniform+redispatch re-run.
StudyReport run_full_study(const StudyInput& input);

}  // namespace h2grid::scenario
