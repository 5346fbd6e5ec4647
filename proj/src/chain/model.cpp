#include <algorithm>
#include <cmath>
#include <string>

#include "h2grid/chain.hpp"

namespace h2grid::chain {

namespace {

double route_distance(const Source& s, const demand::ConsumptionLocation& c) {
  return grid::distance({s.x, s.y}, {c.x, c.y});
}

// Hours one truck spends on one delivery: round trip plus loading.
double trip_hours(const TruckParams& t, const CarrierParams& c, double dist) {
  return 2.0 * t.detour_factor * dist / t.speed_km_h + c.loading_time_h;
}

// EUR per delivery: labor for the trip plus fuel and toll.
double trip_cost(const TruckParams& t, const CarrierParams& c, double dist) {
  return t.wage_eur_per_h * trip_hours(t, c, dist) +
         2.0 * t.detour_factor * dist * (t.fuel_kg_per_km * t.fuel_price_eur_per_kg + t.toll_eur_per_km);
}

// Trips per day on a route, split into the part proportional to HT and the
// part proportional to Y.
struct TripModel {
  double per_ht = 0.0;
  double per_y = 0.0;
};

TripModel trips(const ChainInput& in, const demand::ConsumptionLocation& c) {
  const double cap = in.carrier.trailer_capacity_kg;
  if (c.is_station()) return {0.0, c.kg_per_day / cap};
  if (in.trucks.industry_trips_per_load) return {1.0 / cap, 0.0};
  return {0.0, 1.0};
}

struct Coefficients {
  double pcc_per_kg_day = 0.0;                   // EUR/yr per kg/day
  std::vector<double> poc;                       // per source
  std::vector<double> coc;                       // per source
  double truck_fleet_per_unit = 0.0;             // EUR/yr per truck+trailer
};

Coefficients coefficients(const ChainInput& in, const std::vector<Source>& sources) {
  Coefficients k;
  const ProductionParams& pp = in.production;
  const double af_el = annuity_factor(in.wacc, pp.years);
  k.pcc_per_kg_day = kDaysPerYear * pp.energy_density_kwh_per_kg * pp.ic_eur_per_kw /
                     (pp.full_load_hours() * pp.efficiency) * (1.0 + pp.om_fraction) * af_el;
  const auto& tm = in.tariffs;
  for (const auto& s : sources) {
    double poc = 0.0;
    double coc = 0.0;
    if (s.is_import) {
      poc = in.import.cost_eur_per_kg * kDaysPerYear;
    } else {
      const double ep = tm.ep_node[static_cast<std::size_t>(s.node)];
      poc = pp.ec_kwh_per_kg * ep * kDaysPerYear;
      if (const auto& st = in.carrier.production_step) {
        coc += (st->ec_kwh_per_kg * ep + st->ngc_kwh_per_kg * tm.ngp) * (1.0 + st->loss_fraction) * kDaysPerYear;
      }
    }
    if (const auto& st = in.carrier.consumption_step) {
      coc += (st->ec_kwh_per_kg * tm.ep + st->ngc_kwh_per_kg * tm.ngp) * (1.0 + st->loss_fraction) * kDaysPerYear;
    }
    k.poc.push_back(poc);
    k.coc.push_back(coc);
  }
  const TruckParams& t = in.trucks;
  k.truck_fleet_per_unit = t.invest_eur * (1.0 + t.om_fraction) * annuity_factor(in.wacc, t.years) +
                           in.carrier.trailer_invest_eur * (1.0 + in.carrier.trailer_om) *
                               annuity_factor(in.wacc, in.carrier.trailer_years);
  return k;
}

CostComponents constant_costs(const ChainInput& in, double total_kg_day, double domestic_kg_day) {
  CostComponents c;
  const auto annual_capex = [&](const ConversionStep& st, double x) {
    return st.investment(x) * (1.0 + st.om_fraction) * annuity_factor(in.wacc, st.years);
  };
  if (const auto& st = in.carrier.production_step) c.ccc += annual_capex(*st, domestic_kg_day);
  if (const auto& st = in.carrier.consumption_step) c.ccc += annual_capex(*st, total_kg_day);

  int stations = 0;
  double station_kg = 0.0;
  for (const auto& s : in.sinks) {
    if (!s.is_station()) continue;
    ++stations;
    station_kg += s.kg_per_day;
  }
  if (stations > 0) {
    const auto& sp = in.carrier.station;
    const double is =
        demand::station_investment_cost(demand::kStationCapacityKgDay, static_cast<double>(stations), sp);
    c.scc = is * stations * (1.0 + sp.om_fraction) * annuity_factor(in.wacc, sp.depreciation_years);
    c.soc = (sp.ec_kwh_per_kg * in.tariffs.ep + sp.ngc_kwh_per_kg * in.tariffs.ngp) * (1.0 + in.carrier.station_loss) *
            station_kg * kDaysPerYear;
  }
  return c;
}

void validate_input(const ChainInput& in) {
  for (const auto& c : in.sinks) {
    if (c.node < 0) throw Error(ErrorCode::InvalidInput, "consumption location " + std::to_string(c.id) + " is not anchored");
    if (!(c.kg_per_day >= 0.0) || !std::isfinite(c.kg_per_day)) {
      throw Error(ErrorCode::InvalidInput, "consumption location " + std::to_string(c.id) + " has invalid demand");
    }
  }
  for (const auto& p : in.candidates) {
    if (p.id < 0 || static_cast<std::size_t>(p.id) >= in.tariffs.ep_node.size() ||
        !std::isfinite(in.tariffs.ep_node[static_cast<std::size_t>(p.id)])) {
      throw Error(ErrorCode::InvalidInput, "no electricity tariff for candidate node " + std::to_string(p.id));
    }
  }
  if (!std::isfinite(in.tariffs.ep) || !std::isfinite(in.tariffs.ngp)) {
    throw Error(ErrorCode::InvalidInput, "downstream tariffs must be finite");
  }
  if (!(in.carrier.trailer_capacity_kg > 0.0)) throw Error(ErrorCode::InvalidInput, "trailer capacity must be positive");
  if (!(in.trucks.speed_km_h > 0.0) || !(in.trucks.working_hours_per_day > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "truck speed and working hours must be positive");
  }
  const auto& pp = in.production;
  if (!(pp.full_load_hours() > 0.0) || !(pp.efficiency > 0.0) || !(pp.ec_kwh_per_kg > 0.0) ||
      !(pp.cap_min_mw >= 0.0) || !(pp.cap_max_mw >= pp.cap_min_mw)) {
    throw Error(ErrorCode::InvalidInput, "invalid electrolyzer parameters");
  }
}

}  // namespace

ChainProblem build_chain_problem(const ChainInput& input) {
  validate_input(input);
  ChainProblem cp;
  cp.input = input;
  const ChainInput& in = cp.input;

  for (const auto& p : in.candidates) cp.sources.push_back({p.id, false, p.x, p.y});
  double import_cap = 0.0;
  if (in.import.enabled) {
    if (in.import.node < 0 || static_cast<std::size_t>(in.import.node) >= in.nodes.size()) {
      throw Error(ErrorCode::InvalidInput, "import node " + std::to_string(in.import.node) + " is not a grid node");
    }
    const auto& n = in.nodes[static_cast<std::size_t>(in.import.node)];
    cp.sources.push_back({n.id, true, n.x, n.y});
    import_cap = std::max(0.0, in.import.capacity_kg_day);
  }

  double total = 0.0;
  for (const auto& c : in.sinks) total += c.kg_per_day;
  cp.total_demand_kg_day = total;
  const double cap_max = in.production.cap_max_kg_day();
  const double cap_min = in.production.cap_min_kg_day();
  const double supply = static_cast<double>(in.candidates.size()) * cap_max + import_cap;
  if (supply < total * (1.0 - 1e-12)) {
    throw Error(ErrorCode::StructurallyInfeasible, "sources can supply at most " + std::to_string(supply) +
                                                       " kg/day but demand is " + std::to_string(total) + " kg/day");
  }
  // The import delivers its full capacity, limited to what is demanded.
  cp.import_kg_day = std::min(import_cap, total);
  cp.constants = constant_costs(in, total, total - cp.import_kg_day);
  cp.constant_eur = cp.constants.ccc + cp.constants.scc + cp.constants.soc;

  const Coefficients k = coefficients(in, cp.sources);
  lp::LinearProblem& p = cp.problem;
  const std::size_t ns = cp.sources.size();
  const std::size_t nc = in.sinks.size();
  cp.x_var.assign(ns, -1);
  cp.hp_var.assign(ns, -1);
  cp.ht_var.assign(ns, std::vector<int>(nc, -1));
  cp.y_var.assign(ns, std::vector<int>(nc, -1));

  for (std::size_t s = 0; s < ns; ++s) {
    const Source& src = cp.sources[s];
    const std::string tag = (src.is_import ? "imp" : "p") + std::to_string(src.node);
    if (src.is_import) {
      cp.hp_var[s] = p.add_variable(k.poc[s] + k.coc[s], cp.import_kg_day, cp.import_kg_day, "HP_" + tag);
    } else {
      cp.x_var[s] = p.add_binary(0.0, "X_" + tag);
      cp.hp_var[s] = p.add_variable(k.pcc_per_kg_day + k.poc[s] + k.coc[s], 0.0, cap_max, "HP_" + tag);
    }
  }
  std::vector<std::vector<double>> hours_per_ht(ns, std::vector<double>(nc, 0.0));
  std::vector<std::vector<double>> hours_per_y(ns, std::vector<double>(nc, 0.0));
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& sink = in.sinks[c];
      const double dist = route_distance(cp.sources[s], sink);
      const TripModel tr = trips(in, sink);
      const double cost = trip_cost(in.trucks, in.carrier, dist) * kDaysPerYear;
      const double hrs = trip_hours(in.trucks, in.carrier, dist);
      const std::string tag = std::to_string(s) + "_" + std::to_string(c);
      cp.ht_var[s][c] = p.add_variable(tr.per_ht * cost, 0.0, sink.kg_per_day, "HT_" + tag);
      cp.y_var[s][c] = p.add_binary(tr.per_y * cost, "Y_" + tag);
      hours_per_ht[s][c] = tr.per_ht * hrs;
      hours_per_y[s][c] = tr.per_y * hrs;
    }
  }
  cp.nt_var = p.add_integer(k.truck_fleet_per_unit, 0.0, lp::kInf, "NT");

  // Total production equals total demand.
  std::vector<std::pair<int, double>> all_hp;
  for (std::size_t s = 0; s < ns; ++s) all_hp.emplace_back(cp.hp_var[s], 1.0);
  p.add_row(all_hp, lp::Sense::Equal, total, "demand_total");
  // Electrolyzer capacity box.
  for (std::size_t s = 0; s < ns; ++s) {
    if (cp.sources[s].is_import) continue;
    p.add_row({{cp.hp_var[s], 1.0}, {cp.x_var[s], -cap_min}}, lp::Sense::GreaterEqual, 0.0, "capmin_" + std::to_string(s));
    p.add_row({{cp.hp_var[s], 1.0}, {cp.x_var[s], -cap_max}}, lp::Sense::LessEqual, 0.0, "capmax_" + std::to_string(s));
  }
  // Shipments within production.
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t c = 0; c < nc; ++c) terms.emplace_back(cp.ht_var[s][c], 1.0);
    terms.emplace_back(cp.hp_var[s], -1.0);
    p.add_row(terms, lp::Sense::LessEqual, 0.0, "ship_" + std::to_string(s));
  }
  // Every sink covered.
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t s = 0; s < ns; ++s) terms.emplace_back(cp.ht_var[s][c], 1.0);
    p.add_row(terms, lp::Sense::GreaterEqual, in.sinks[c].kg_per_day, "cover_" + std::to_string(c));
  }
  // Flow only on open links; a sink never needs more than its own demand.
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t c = 0; c < nc; ++c) {
      p.add_row({{cp.ht_var[s][c], 1.0}, {cp.y_var[s][c], -in.sinks[c].kg_per_day}}, lp::Sense::LessEqual, 0.0,
                "link_" + std::to_string(s) + "_" + std::to_string(c));
    }
  }
  // Truck fleet covers the occupied hours.
  std::vector<std::pair<int, double>> fleet{{cp.nt_var, -in.trucks.working_hours_per_day}};
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (hours_per_ht[s][c] != 0.0) fleet.emplace_back(cp.ht_var[s][c], hours_per_ht[s][c]);
      if (hours_per_y[s][c] != 0.0) fleet.emplace_back(cp.y_var[s][c], hours_per_y[s][c]);
    }
  }
  p.add_row(fleet, lp::Sense::LessEqual, 0.0, "fleet");
  return cp;
}

CostComponents evaluate_costs(const ChainProblem& cp, const std::vector<double>& hp,
                              const std::vector<std::vector<double>>& ht, const std::vector<std::vector<int>>& y,
                              int trucks) {
  const ChainInput& in = cp.input;
  CostComponents c = cp.constants;
  const ProductionParams& pp = in.production;
  const auto& tm = in.tariffs;
  const double af_el = annuity_factor(in.wacc, pp.years);
  for (std::size_t s = 0; s < cp.sources.size(); ++s) {
    const Source& src = cp.sources[s];
    const double kg_year = hp[s] * kDaysPerYear;
    if (src.is_import) {
      c.poc += kg_year * in.import.cost_eur_per_kg;
    } else {
      const double ep = tm.ep_node[static_cast<std::size_t>(src.node)];
      const double kw = kg_year * pp.energy_density_kwh_per_kg / (pp.full_load_hours() * pp.efficiency);
      c.pcc += kw * pp.ic_eur_per_kw * (1.0 + pp.om_fraction) * af_el;
      c.poc += kg_year * pp.ec_kwh_per_kg * ep;
      if (const auto& st = in.carrier.production_step) {
        c.coc += kg_year * (st->ec_kwh_per_kg * ep + st->ngc_kwh_per_kg * tm.ngp) * (1.0 + st->loss_fraction);
      }
    }
    if (const auto& st = in.carrier.consumption_step) {
      c.coc += kg_year * (st->ec_kwh_per_kg * tm.ep + st->ngc_kwh_per_kg * tm.ngp) * (1.0 + st->loss_fraction);
    }
  }
  const TruckParams& t = in.trucks;
  c.tcc = trucks * (t.invest_eur * (1.0 + t.om_fraction) * annuity_factor(in.wacc, t.years) +
                    in.carrier.trailer_invest_eur * (1.0 + in.carrier.trailer_om) *
                        annuity_factor(in.wacc, in.carrier.trailer_years));
  for (std::size_t s = 0; s < cp.sources.size(); ++s) {
    for (std::size_t k = 0; k < in.sinks.size(); ++k) {
      const auto& sink = in.sinks[k];
      const TripModel tr = trips(in, sink);
      const double per_day = tr.per_ht * ht[s][k] + tr.per_y * y[s][k];
      c.toc += per_day * trip_cost(t, in.carrier, route_distance(cp.sources[s], sink)) * kDaysPerYear;
    }
  }
  return c;
}

double ChainDesign::domestic_kg_day() const {
  double s = 0.0;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!sources[i].is_import) s += production_kg_day[i];
  }
  return s;
}

std::vector<double> ChainDesign::production_by_node(int num_nodes) const {
  std::vector<double> out(static_cast<std::size_t>(num_nodes), 0.0);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!sources[i].is_import) out.at(static_cast<std::size_t>(sources[i].node)) += production_kg_day[i];
  }
  return out;
}

ChainDesign solve_chain(const ChainProblem& cp, const lp::Options& options) {
  lp::Solution sol;
  double gap = 0.0;
  try {
    sol = lp::solve_milp(cp.problem, options);
  } catch (const lp::ResourceLimitError& e) {
    if (!e.incumbent()) throw;
    sol = *e.incumbent();
    gap = (sol.objective - e.bound()) / std::max(1.0, std::abs(sol.objective));
  }
  if (sol.status != lp::Status::Optimal) {
    throw Error(ErrorCode::ChainInfeasible, std::string("supply chain MILP is ") + std::string(lp::to_string(sol.status)));
  }

  const std::size_t ns = cp.sources.size();
  const std::size_t nc = cp.input.sinks.size();
  const auto clean = [](double v) { return std::abs(v) < 1e-9 ? 0.0 : v; };
  ChainDesign d;
  d.sources = cp.sources;
  d.open.assign(ns, 0);
  d.production_kg_day.assign(ns, 0.0);
  d.flow_kg_day.assign(ns, std::vector<double>(nc, 0.0));
  d.link.assign(ns, std::vector<int>(nc, 0));
  for (std::size_t s = 0; s < ns; ++s) {
    d.production_kg_day[s] = clean(sol.primal[cp.hp_var[s]]);
    d.open[s] = cp.sources[s].is_import ? (cp.import_kg_day > 0.0 ? 1 : 0)
                                        : static_cast<int>(std::lround(sol.primal[cp.x_var[s]]));
    for (std::size_t c = 0; c < nc; ++c) {
      d.flow_kg_day[s][c] = clean(sol.primal[cp.ht_var[s][c]]);
      d.link[s][c] = static_cast<int>(std::lround(sol.primal[cp.y_var[s][c]]));
      // A link without flow and without cost carries no decision; close it.
      if (d.link[s][c] == 1 && d.flow_kg_day[s][c] == 0.0 && cp.problem.cost[cp.y_var[s][c]] == 0.0) d.link[s][c] = 0;
    }
  }
  d.trucks = static_cast<int>(std::lround(sol.primal[cp.nt_var]));
  d.costs = evaluate_costs(cp, d.production_kg_day, d.flow_kg_day, d.link, d.trucks);
  d.objective = sol.objective + cp.constant_eur;
  d.total_demand_kg_day = cp.total_demand_kg_day;
  for (const auto& s : cp.input.sinks) {
    if (s.is_station()) d.station_demand_kg_day += s.kg_per_day;
  }
  d.nodes_explored = sol.nodes;
  d.gap = gap;
  const double mismatch = std::abs(d.costs.total() - d.objective);
  if (mismatch > 1e-6 * (1.0 + std::abs(d.objective))) {
    throw Error(ErrorCode::InvalidProblem, "cost components (" + std::to_string(d.costs.total()) +
                                               ") do not reproduce the objective (" + std::to_string(d.objective) + ")");
  }
  return d;
}

CostBreakdown end_use_cost(const CostComponents& costs, double served_kg_year, bool include_stations,
                           double station_kg_year) {
  if (!(served_kg_year > 0.0)) throw Error(ErrorCode::DivisionDomain, "served hydrogen mass must be positive");
  CostBreakdown b;
  const std::pair<const char*, double> supply[] = {{"PCC", costs.pcc}, {"POC", costs.poc}, {"CCC", costs.ccc},
                                                   {"COC", costs.coc}, {"TCC", costs.tcc}, {"TOC", costs.toc}};
  for (const auto& [name, v] : supply) b.eur_per_kg.emplace_back(name, v / served_kg_year);
  if (include_stations) {
    const double base = station_kg_year > 0.0 ? station_kg_year : served_kg_year;
    b.eur_per_kg.emplace_back("SCC", costs.scc / base);
    b.eur_per_kg.emplace_back("SOC", costs.soc / base);
  }
  for (const auto& [name, v] : b.eur_per_kg) b.total_eur_per_kg += v;
  return b;
}

}  // namespace h2grid::chain
