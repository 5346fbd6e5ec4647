#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "h2grid/grid.hpp"

namespace h2grid {

// Lower heating value of hydrogen.
inline constexpr double kLhvKwhPerKg = 33.33;
inline constexpr double kHoursPerYear = 8760.0;
inline constexpr double kDaysPerYear = 365.0;

enum class Carrier { LH2, GH2, LOHC };

std::string_view to_string(Carrier c);
Carrier parse_carrier(std::string_view text);

}  // namespace h2grid

namespace h2grid::demand {

enum class Sector { Steel, Ammonia, Methanol, Refinery };
std::string_view to_string(Sector s);
Sector parse_sector(std::string_view text);

// How `basis_value` is read:
//   tons            product output t/yr; factor = kg H2 per t product
//   hourly_rate     number of units; factor = kg H2/h per unit, 8760 h/yr
//   annual_h2_tons  t H2/yr directly; factor unused
//   crude_tons      t crude/yr; factor = m3 H2 per t crude
enum class BasisKind { Tons, HourlyRate, AnnualH2Tons, CrudeTons };
std::string_view to_string(BasisKind b);
BasisKind parse_basis_kind(std::string_view text);

inline constexpr double kAmmoniaKgPerTon = 177.55;
inline constexpr double kMethanolKgPerTon = 188.73;
inline constexpr double kRefineryM3PerTon = 100.0;
inline constexpr double kRefineryUtilization = 0.8;
inline constexpr double kH2KgPerM3 = 0.0841;
inline constexpr double kRefineryNetShare = 0.22;

struct IndustrialSite {
  std::string name;
  Sector sector = Sector::Ammonia;
  BasisKind basis_kind = BasisKind::Tons;
  double basis_value = 0.0;
  double factor = std::numeric_limits<double>::quiet_NaN();  // NaN: sector default if one exists
  double deduction_kg_h = 0.0;                               // self-supply
  double x = 0.0;
  double y = 0.0;
};

// Annual hydrogen demand of one site in kWh (LHV). Throws IncompleteSite.
double industrial_site_demand(const IndustrialSite& site);

struct StationParams {
  double alpha = 0.0;
  double beta = 0.06;
  double gamma = 0.0;
  double ec_kwh_per_kg = 0.0;
  double ngc_kwh_per_kg = 0.0;
  int depreciation_years = 10;
  double om_fraction = 0.05;
};

StationParams default_station_params(Carrier carrier);

inline constexpr double kStationCapacityKgDay = 1000.0;
inline constexpr double kCarTurnoverKgDay = 700.0;
inline constexpr double kTruckTurnoverKgDay = 847.42;

// Investment per station for capacity C (kg/day) when n stations are built.
// Throws InvalidStationSpec.
double station_investment_cost(double capacity_kg_day, double n_stations, const StationParams& params);

enum class LocationKind { Industry, StationCars, StationTrucks };
std::string_view to_string(LocationKind k);

struct ConsumptionLocation {
  int id = 0;
  LocationKind kind = LocationKind::Industry;
  double kg_per_day = 0.0;
  int node = -1;
  double x = 0.0;
  double y = 0.0;
  std::string name;

  bool is_station() const { return kind != LocationKind::Industry; }
};

struct StationCandidate {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;
};

// Shortfalls below this fraction of one station's turnover do not open an
// extra station (absorbs rounding in published turnover figures).
inline constexpr double kStationCoverageTolerance = 1e-3;

int station_count(double annual_kwh, double turnover_kg_day, double tolerance = kStationCoverageTolerance);

// Largest-remainder apportionment of `total` items by weight; ties go to the
// lower index.
std::vector<int> allocate_by_weight(int total, std::span<const double> weights);

// One location per station, each with HD = turnover, at the candidate's
// coordinates. Nodes are left unassigned (-1). Throws NoCandidates.
std::vector<ConsumptionLocation> plan_stations(double annual_kwh, double turnover_kg_day,
                                               std::span<const StationCandidate> candidates, LocationKind kind);

// Industrial sites followed by the station plan, renumbered from 0 and
// anchored to their nearest grid node.
std::vector<ConsumptionLocation> build_consumption_set(std::span<const IndustrialSite> sites,
                                                       std::span<const ConsumptionLocation> stations,
                                                       std::span<const grid::Node> nodes);

double total_kg_per_day(std::span<const ConsumptionLocation> locations);

}  // namespace h2grid::demand
