#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "h2grid/demand.hpp"

namespace h2grid {

std::string_view to_string(Carrier c) {
  switch (c) {
    case Carrier::LH2:
      return "LH2";
    case Carrier::GH2:
      return "GH2";
    case Carrier::LOHC:
      return "LOHC";
  }
  return "?";
}

Carrier parse_carrier(std::string_view text) {
  if (text == "LH2") return Carrier::LH2;
  if (text == "GH2") return Carrier::GH2;
  if (text == "LOHC") return Carrier::LOHC;
  throw Error(ErrorCode::InvalidInput, "unknown carrier '" + std::string(text) + "'");
}

}  // namespace h2grid

namespace h2grid::demand {

std::string_view to_string(Sector s) {
  switch (s) {
    case Sector::Steel:
      return "steel";
    case Sector::Ammonia:
      return "ammonia";
    case Sector::Methanol:
      return "methanol";
    case Sector::Refinery:
      return "refinery";
  }
  return "?";
}

Sector parse_sector(std::string_view text) {
  if (text == "steel") return Sector::Steel;
  if (text == "ammonia") return Sector::Ammonia;
  if (text == "methanol") return Sector::Methanol;
  if (text == "refinery") return Sector::Refinery;
  throw Error(ErrorCode::InvalidInput, "unknown sector '" + std::string(text) + "'");
}

std::string_view to_string(BasisKind b) {
  switch (b) {
    case BasisKind::Tons:
      return "tons";
    case BasisKind::HourlyRate:
      return "hourly_rate";
    case BasisKind::AnnualH2Tons:
      return "annual_h2_tons";
    case BasisKind::CrudeTons:
      return "crude_tons";
  }
  return "?";
}

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "tons") return BasisKind::Tons;
  if (text == "hourly_rate") return BasisKind::HourlyRate;
  if (text == "annual_h2_tons") return BasisKind::AnnualH2Tons;
  if (text == "crude_tons") return BasisKind::CrudeTons;
  throw Error(ErrorCode::InvalidInput, "unknown basis kind '" + std::string(text) + "'");
}

std::string_view to_string(LocationKind k) {
  switch (k) {
    case LocationKind::Industry:
      return "industry";
    case LocationKind::StationCars:
      return "station_cars";
    case LocationKind::StationTrucks:
      return "station_trucks";
  }
  return "?";
}

namespace {

double factor_or_default(const IndustrialSite& site) {
  if (!std::isnan(site.factor)) return site.factor;
  if (site.basis_kind == BasisKind::Tons) {
    if (site.sector == Sector::Ammonia) return kAmmoniaKgPerTon;
    if (site.sector == Sector::Methanol) return kMethanolKgPerTon;
  }
  if (site.basis_kind == BasisKind::CrudeTons) return kRefineryM3PerTon;
  throw Error(ErrorCode::IncompleteSite, "site '" + site.name + "': no demand factor for sector " +
                                             std::string(to_string(site.sector)));
}

}  // namespace

double industrial_site_demand(const IndustrialSite& site) {
  const auto bad = [&](const std::string& what) {
    throw Error(ErrorCode::IncompleteSite, "site '" + site.name + "': " + what);
  };
  if (!std::isfinite(site.basis_value) || site.basis_value < 0.0) bad("output basis missing or negative");
  if (!std::isfinite(site.deduction_kg_h) || site.deduction_kg_h < 0.0) bad("deduction missing or negative");
  double kg = 0.0;
  switch (site.basis_kind) {
    case BasisKind::Tons:
      kg = site.basis_value * factor_or_default(site);
      break;
    case BasisKind::HourlyRate:
      if (std::isnan(site.factor)) bad("hourly_rate needs kg/h per unit in the factor field");
      kg = site.basis_value * site.factor * kHoursPerYear;
      break;
    case BasisKind::AnnualH2Tons:
      kg = site.basis_value * 1000.0;
      break;
    case BasisKind::CrudeTons:
      kg = site.basis_value * kRefineryUtilization * factor_or_default(site) * kH2KgPerM3 * kRefineryNetShare;
      break;
  }
  if (!std::isnan(site.factor) && site.factor < 0.0) bad("negative factor");
  kg -= site.deduction_kg_h * kHoursPerYear;
  return std::max(0.0, kg) * kLhvKwhPerKg;
}

StationParams default_station_params(Carrier carrier) {
  StationParams p;
  switch (carrier) {
    case Carrier::LH2:
      p.alpha = 0.6;
      p.gamma = 0.9;
      p.ec_kwh_per_kg = 0.6;
      p.ngc_kwh_per_kg = 0.0;
      break;
    case Carrier::GH2:
      p.alpha = 0.7;
      p.gamma = 0.6;
      p.ec_kwh_per_kg = 1.6;
      p.ngc_kwh_per_kg = 0.0;
      break;
    case Carrier::LOHC:
      p.alpha = 0.66;
      p.gamma = 1.4;
      p.ec_kwh_per_kg = 4.4;
      p.ngc_kwh_per_kg = 11.7;
      break;
  }
  return p;
}

double station_investment_cost(double capacity_kg_day, double n_stations, const StationParams& params) {
  if (!(capacity_kg_day > 0.0) || !(n_stations >= 1.0)) {
    throw Error(ErrorCode::InvalidStationSpec, "station capacity must be positive and count at least 1");
  }
  const double scale = std::pow(capacity_kg_day / 212.0, params.alpha);
  const double learning = std::pow(1.0 - params.beta, std::log2(capacity_kg_day * n_stations / (212.0 * 400.0)));
  return 1.3 * 600000.0 * params.gamma * scale * learning;
}

int station_count(double annual_kwh, double turnover_kg_day, double tolerance) {
  if (!(turnover_kg_day > 0.0)) throw Error(ErrorCode::InvalidStationSpec, "station turnover must be positive");
  if (!(annual_kwh >= 0.0)) throw Error(ErrorCode::InvalidInput, "transport demand must be nonnegative");
  const double stations = annual_kwh / kLhvKwhPerKg / kDaysPerYear / turnover_kg_day;
  return static_cast<int>(std::max(0.0, std::ceil(stations - tolerance)));
}

std::vector<int> allocate_by_weight(int total, std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::NoCandidates, "no station candidates");
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidInput, "candidate weights must be nonnegative");
    sum += w;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::InvalidInput, "candidate weights are all zero");
  std::vector<int> out(weights.size(), 0);
  std::vector<double> rem(weights.size(), 0.0);
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double quota = total * weights[i] / sum;
    out[i] = static_cast<int>(std::floor(quota));
    rem[i] = quota - out[i];
    assigned += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

std::vector<ConsumptionLocation> plan_stations(double annual_kwh, double turnover_kg_day,
                                               std::span<const StationCandidate> candidates, LocationKind kind) {
  if (candidates.empty()) throw Error(ErrorCode::NoCandidates, "no station candidates");
  if (turnover_kg_day > kStationCapacityKgDay) {
    throw Error(ErrorCode::InvalidStationSpec, "turnover exceeds the 1000 kg/day station capacity");
  }
  const int count = station_count(annual_kwh, turnover_kg_day);
  std::vector<ConsumptionLocation> plan;
  if (count == 0) return plan;
  std::vector<double> weights;
  for (const auto& c : candidates) weights.push_back(c.weight);
  const std::vector<int> per = allocate_by_weight(count, weights);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (int k = 0; k < per[i]; ++k) {
      ConsumptionLocation loc;
      loc.id = static_cast<int>(plan.size());
      loc.kind = kind;
      loc.kg_per_day = turnover_kg_day;
      loc.x = candidates[i].x;
      loc.y = candidates[i].y;
      loc.name = std::string(to_string(kind)) + "_" + std::to_string(candidates[i].id) + "_" + std::to_string(k);
      plan.push_back(std::move(loc));
    }
  }
  return plan;
}

std::vector<ConsumptionLocation> build_consumption_set(std::span<const IndustrialSite> sites,
                                                       std::span<const ConsumptionLocation> stations,
                                                       std::span<const grid::Node> nodes) {
  std::vector<ConsumptionLocation> out;
  for (const auto& s : sites) {
    const double kwh = industrial_site_demand(s);
    if (kwh <= 0.0) continue;
    ConsumptionLocation loc;
    loc.kind = LocationKind::Industry;
    loc.kg_per_day = kwh / kLhvKwhPerKg / kDaysPerYear;
    loc.x = s.x;
    loc.y = s.y;
    loc.name = s.name;
    out.push_back(std::move(loc));
  }
  for (const auto& s : stations) {
    if (!(s.kg_per_day > 0.0)) continue;
    out.push_back(s);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].id = static_cast<int>(i);
    out[i].node = grid::assign_to_nearest_node({out[i].x, out[i].y}, nodes);
  }
  return out;
}

double total_kg_per_day(std::span<const ConsumptionLocation> locations) {
  double s = 0.0;
  for (const auto& l : locations) s += l.kg_per_day;
  return s;
}

}  // namespace h2grid::demand
