#pragma once

#include <optional>
#include <string>
#include <vector>

#include "h2grid/demand.hpp"
#include "h2grid/grid.hpp"
#include "h2grid/lp.hpp"

namespace h2grid::chain {

// Capital recovery factor. Throws InvalidDepreciation for years < 1.
double annuity_factor(double wacc, double years);

// Investment = coef * (x / ref_kg_day)^exponent for a daily throughput x.
struct ConversionStep {
  std::string name;
  double coef_eur = 0.0;
  double ref_kg_day = 1.0;
  double exponent = 1.0;
  double years = 10.0;
  double om_fraction = 0.0;
  double ec_kwh_per_kg = 0.0;
  double ngc_kwh_per_kg = 0.0;
  double loss_fraction = 0.0;

  double investment(double kg_day) const;
};

// Specific work of isentropic compression with efficiency, kWh per kg.
double compression_energy_kwh_per_kg(double p_in_bar = 30.0, double p_out_bar = 500.0, double temperature_k = 303.15,
                                      double kappa = 1.4, double efficiency = 0.75);

ConversionStep default_compressor(double ec_kwh_per_kg = compression_energy_kwh_per_kg());
ConversionStep default_liquefaction();
ConversionStep default_evaporation();
ConversionStep default_hydrogenation();
ConversionStep default_dehydrogenation();

struct CarrierParams {
  Carrier state = Carrier::LH2;
  double trailer_capacity_kg = 4300.0;
  double trailer_invest_eur = 860000.0;
  double trailer_years = 12.0;
  double trailer_om = 0.02;
  double loading_time_h = 1.5;  // per delivery, loading plus unloading
  std::optional<ConversionStep> production_step;   // at the source
  std::optional<ConversionStep> consumption_step;  // at the sink
  demand::StationParams station;
  double station_loss = 0.0;
};

CarrierParams default_carrier_params(Carrier state);

struct TruckParams {
  double invest_eur = 174000.0;
  double years = 8.0;
  double om_fraction = 0.12;
  double fuel_kg_per_km = 5.19 / 100.0;
  double fuel_price_eur_per_kg = 7.91;
  double toll_eur_per_km = 0.15;
  double wage_eur_per_h = 35.0;
  double speed_km_h = 50.0;
  double detour_factor = 1.3;
  double working_hours_per_day = 24.0;
  // true: industry routes pay per trailer load (HT / CAP_trailer);
  // false: one round trip per day per open link, as the cost formula is printed.
  bool industry_trips_per_load = true;
};

struct ProductionParams {
  double ic_eur_per_kw = 604.0;
  double years = 10.0;
  double om_fraction = 0.04;
  double ec_kwh_per_kg = 47.6;
  double efficiency = 0.70;
  double energy_density_kwh_per_kg = kLhvKwhPerKg;
  double capacity_factor = 0.70;
  double cap_min_mw = 10.0;
  double cap_max_mw = 100.0;

  double full_load_hours() const { return kHoursPerYear * capacity_factor; }
  double mw_to_kg_day(double mw) const { return mw * 1000.0 * 24.0 / ec_kwh_per_kg; }
  double cap_min_kg_day() const { return mw_to_kg_day(cap_min_mw); }
  double cap_max_kg_day() const { return mw_to_kg_day(cap_max_mw); }
};

struct ImportSpec {
  bool enabled = false;
  int node = 0;
  double capacity_kg_day = 27.40e6 / kLhvKwhPerKg;
  double cost_eur_per_kg = 3.48;
};

// Electricity prices in EUR/kWh.
struct TariffMap {
  std::vector<double> ep_node;  // production side, indexed by grid node id
  double ep = 0.0;              // downstream conversion and stations
  double ngp = 0.03;            // natural gas, EUR/kWh
};

struct ChainInput {
  std::vector<demand::ConsumptionLocation> sinks;
  std::vector<grid::Node> candidates;  // electrolyzer sites (grid nodes)
  std::vector<grid::Node> nodes;       // full node table, for the import location
  TariffMap tariffs;
  CarrierParams carrier = default_carrier_params(Carrier::LH2);
  ProductionParams production;
  TruckParams trucks;
  ImportSpec import;
  double wacc = 0.08;
};

struct Source {
  int node = 0;
  bool is_import = false;
  double x = 0.0;
  double y = 0.0;
};

struct CostComponents {
  double pcc = 0.0;
  double poc = 0.0;
  double ccc = 0.0;
  double coc = 0.0;
  double tcc = 0.0;
  double toc = 0.0;
  double scc = 0.0;
  double soc = 0.0;

  double supply_total() const { return pcc + poc + ccc + coc + tcc + toc; }
  double total() const { return supply_total() + scc + soc; }
};

// The MILP plus everything needed to decode and audit a solution.
struct ChainProblem {
  ChainInput input;
  std::vector<Source> sources;  // candidates in order, then the import source
  lp::LinearProblem problem;
  std::vector<int> x_var;                // per source; -1 for the import
  std::vector<int> hp_var;               // per source
  std::vector<std::vector<int>> ht_var;  // [source][sink]
  std::vector<std::vector<int>> y_var;   // [source][sink]
  int nt_var = -1;
  double constant_eur = 0.0;  // CCC + SCC + SOC, outside the LP objective
  CostComponents constants;
  double total_demand_kg_day = 0.0;
  double import_kg_day = 0.0;
};

// Throws StructurallyInfeasible when the sources cannot cover demand.
ChainProblem build_chain_problem(const ChainInput& input);

struct ChainDesign {
  std::vector<Source> sources;
  std::vector<int> open;                      // X per source
  std::vector<double> production_kg_day;      // HP per source
  std::vector<std::vector<double>> flow_kg_day;  // HT [source][sink]
  std::vector<std::vector<int>> link;         // Y [source][sink]
  int trucks = 0;
  CostComponents costs;
  double objective = 0.0;  // EUR/year, including constants
  double total_demand_kg_day = 0.0;
  double station_demand_kg_day = 0.0;
  std::int64_t nodes_explored = 0;
  double gap = 0.0;  // relative, nonzero only for a node-limited incumbent

  double domestic_kg_day() const;
  // Production per grid node over domestic sources.
  std::vector<double> production_by_node(int num_nodes) const;
};

// Recomputes every cost component from the decision values.
CostComponents evaluate_costs(const ChainProblem& p, const std::vector<double>& hp,
                              const std::vector<std::vector<double>>& ht, const std::vector<std::vector<int>>& y,
                              int trucks);

// Throws ChainInfeasible, or ResourceLimit when no incumbent exists at the node limit.
ChainDesign solve_chain(const ChainProblem& problem, const lp::Options& options = {});

struct CostBreakdown {
  std::vector<std::pair<std::string, double>> eur_per_kg;  // component name, value
  double total_eur_per_kg = 0.0;
};

// Per-kg costs. Station components count only when include_stations is set.
// Throws DivisionDomain for nonpositive served mass.
CostBreakdown end_use_cost(const CostComponents& costs, double served_kg_year, bool include_stations,
                           double station_kg_year = 0.0);

}  // namespace h2grid::chain
