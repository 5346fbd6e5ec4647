#pragma once

// Exhaustive-enumeration oracle for the supply-chain MILP. It re-derives all
// cost terms from the model equations, enumerates every electrolyzer subset
// and every station-link pattern, and solves the remaining continuous
// transport problem as an LP. The truck count is integral: the LP value is
// convex in it, so the floor and ceiling of the relaxed optimum bracket the
// integer optimum.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "h2grid/chain.hpp"
#include "h2grid/lp.hpp"

namespace chain_oracle {

using namespace h2grid;
using h2grid::chain::ChainInput;

inline double af(double wacc, double a) {
  if (wacc == 0.0) return 1.0 / a;
  return std::pow(1.0 + wacc, a) * wacc / (std::pow(1.0 + wacc, a) - 1.0);
}

struct OracleSource {
  int node;
  bool imported;
  double x, y;
};

struct Terms {
  std::vector<OracleSource> src;
  std::vector<double> hp_cost;                 // EUR/yr per kg/day
  std::vector<std::vector<double>> ht_cost;    // per kg/day on route
  std::vector<std::vector<double>> y_cost;     // per open route
  std::vector<std::vector<double>> ht_hours;   // truck hours per kg/day
  std::vector<std::vector<double>> y_hours;    // truck hours per open route
  double truck_cost = 0.0;                     // per truck+trailer
  double constant = 0.0;
  double import_kg = 0.0;
  double cap_min = 0.0, cap_max = 0.0;
};

inline Terms derive(const ChainInput& in) {
  Terms t;
  const auto& pp = in.production;
  const auto& car = in.carrier;
  const auto& tr = in.trucks;
  const auto& tm = in.tariffs;
  for (const auto& c : in.candidates) t.src.push_back({c.id, false, c.x, c.y});
  double total = 0.0;
  for (const auto& s : in.sinks) total += s.kg_per_day;
  if (in.import.enabled) {
    const auto& n = in.nodes[in.import.node];
    t.src.push_back({n.id, true, n.x, n.y});
    t.import_kg = std::min(in.import.capacity_kg_day, total);
  }
  t.cap_min = pp.cap_min_mw * 24000.0 / pp.ec_kwh_per_kg;
  t.cap_max = pp.cap_max_mw * 24000.0 / pp.ec_kwh_per_kg;
  const double flh = 8760.0 * pp.capacity_factor;
  // Capacity in kW needed for 1 kg/day of output at the given full-load hours.
  const double kw_per_kg_day = 365.0 * pp.energy_density_kwh_per_kg / (flh * pp.efficiency);
  for (const auto& s : t.src) {
    double c = 0.0;
    if (s.imported) {
      c += 365.0 * in.import.cost_eur_per_kg;
    } else {
      const double ep = tm.ep_node[s.node];
      c += kw_per_kg_day * pp.ic_eur_per_kw * (1.0 + pp.om_fraction) * af(in.wacc, pp.years);
      c += 365.0 * pp.ec_kwh_per_kg * ep;
      if (car.production_step) {
        const auto& st = *car.production_step;
        c += 365.0 * (st.ec_kwh_per_kg * ep + st.ngc_kwh_per_kg * tm.ngp) * (1.0 + st.loss_fraction);
      }
    }
    if (car.consumption_step) {
      const auto& st = *car.consumption_step;
      c += 365.0 * (st.ec_kwh_per_kg * tm.ep + st.ngc_kwh_per_kg * tm.ngp) * (1.0 + st.loss_fraction);
    }
    t.hp_cost.push_back(c);
  }
  const std::size_t ns = t.src.size(), nc = in.sinks.size();
  t.ht_cost.assign(ns, std::vector<double>(nc, 0.0));
  t.y_cost = t.ht_cost;
  t.ht_hours = t.ht_cost;
  t.y_hours = t.ht_cost;
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& k = in.sinks[c];
      const double dist = std::sqrt((t.src[s].x - k.x) * (t.src[s].x - k.x) + (t.src[s].y - k.y) * (t.src[s].y - k.y));
      const double drive_h = 2.0 * tr.detour_factor * dist / tr.speed_km_h;
      const double per_trip_h = drive_h + car.loading_time_h;
      const double per_trip_eur = tr.wage_eur_per_h * per_trip_h +
                                  2.0 * tr.detour_factor * dist *
                                      (tr.fuel_kg_per_km * tr.fuel_price_eur_per_kg + tr.toll_eur_per_km);
      if (k.is_station()) {
        const double freq = k.kg_per_day / car.trailer_capacity_kg;
        t.y_cost[s][c] = 365.0 * freq * per_trip_eur;
        t.y_hours[s][c] = freq * per_trip_h;
      } else if (tr.industry_trips_per_load) {
        t.ht_cost[s][c] = 365.0 * per_trip_eur / car.trailer_capacity_kg;
        t.ht_hours[s][c] = per_trip_h / car.trailer_capacity_kg;
      } else {
        t.y_cost[s][c] = 365.0 * per_trip_eur;
        t.y_hours[s][c] = per_trip_h;
      }
    }
  }
  t.truck_cost = tr.invest_eur * (1.0 + tr.om_fraction) * af(in.wacc, tr.years) +
                 car.trailer_invest_eur * (1.0 + car.trailer_om) * af(in.wacc, car.trailer_years);
  const double domestic = total - t.import_kg;
  const auto capex = [&](const chain::ConversionStep& st, double x) {
    if (x <= 0.0) return 0.0;
    return st.coef_eur * std::pow(x / st.ref_kg_day, st.exponent) * (1.0 + st.om_fraction) * af(in.wacc, st.years);
  };
  if (car.production_step) t.constant += capex(*car.production_step, domestic);
  if (car.consumption_step) t.constant += capex(*car.consumption_step, total);
  int stations = 0;
  double station_kg = 0.0;
  for (const auto& k : in.sinks) {
    if (!k.is_station()) continue;
    ++stations;
    station_kg += k.kg_per_day;
  }
  if (stations > 0) {
    const auto& sp = car.station;
    const double is = 1.3 * 600000.0 * sp.gamma * std::pow(1000.0 / 212.0, sp.alpha) *
                      std::pow(1.0 - sp.beta, std::log2(1000.0 * stations / (212.0 * 400.0)));
    t.constant += is * stations * (1.0 + sp.om_fraction) * af(in.wacc, sp.depreciation_years);
    t.constant += (sp.ec_kwh_per_kg * tm.ep + sp.ngc_kwh_per_kg * tm.ngp) * (1.0 + car.station_loss) * station_kg * 365.0;
  }
  return t;
}

// Inner problem for a fixed open set, fixed links to stations, and a fixed
// (or relaxed, if nt < 0) truck count. Returns the LP value and relaxed NT.
inline std::optional<std::pair<double, double>> inner(const ChainInput& in, const Terms& t,
                                                      const std::vector<int>& open,
                                                      const std::vector<std::vector<int>>& station_link, double nt) {
  using lp::Sense;
  const std::size_t ns = t.src.size(), nc = in.sinks.size();
  lp::LinearProblem p;
  std::vector<int> hp(ns);
  std::vector<std::vector<int>> ht(ns, std::vector<int>(nc));
  double fixed = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    if (t.src[s].imported) {
      hp[s] = p.add_variable(t.hp_cost[s], t.import_kg, t.import_kg);
    } else if (open[s]) {
      hp[s] = p.add_variable(t.hp_cost[s], t.cap_min, t.cap_max);
    } else {
      hp[s] = p.add_variable(0.0, 0.0, 0.0);
    }
  }
  double fixed_hours = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    const bool source_on = t.src[s].imported || open[s];
    for (std::size_t c = 0; c < nc; ++c) {
      const auto& k = in.sinks[c];
      bool allowed = source_on;
      if (k.is_station()) allowed = allowed && station_link[s][c];
      if (!k.is_station() && !in.trucks.industry_trips_per_load) allowed = allowed && station_link[s][c];
      ht[s][c] = p.add_variable(t.ht_cost[s][c], 0.0, allowed ? k.kg_per_day : 0.0);
      if (station_link[s][c]) {
        fixed += t.y_cost[s][c];
        fixed_hours += t.y_hours[s][c];
      }
    }
  }
  const int ntv = nt < 0 ? p.add_variable(t.truck_cost, 0.0, lp::kInf) : p.add_variable(t.truck_cost, nt, nt);
  double total = 0.0;
  for (const auto& k : in.sinks) total += k.kg_per_day;
  std::vector<std::pair<int, double>> row;
  for (std::size_t s = 0; s < ns; ++s) row.emplace_back(hp[s], 1.0);
  p.add_row(row, Sense::Equal, total);
  for (std::size_t s = 0; s < ns; ++s) {
    row.clear();
    for (std::size_t c = 0; c < nc; ++c) row.emplace_back(ht[s][c], 1.0);
    row.emplace_back(hp[s], -1.0);
    p.add_row(row, Sense::LessEqual, 0.0);
  }
  for (std::size_t c = 0; c < nc; ++c) {
    row.clear();
    for (std::size_t s = 0; s < ns; ++s) row.emplace_back(ht[s][c], 1.0);
    p.add_row(row, Sense::GreaterEqual, in.sinks[c].kg_per_day);
  }
  row.clear();
  row.emplace_back(ntv, -in.trucks.working_hours_per_day);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (t.ht_hours[s][c] != 0.0) row.emplace_back(ht[s][c], t.ht_hours[s][c]);
    }
  }
  p.add_row(row, Sense::LessEqual, -fixed_hours);
  const auto sol = lp::solve_lp(p);
  if (!sol.optimal()) return std::nullopt;
  return std::make_pair(sol.objective + fixed, sol.primal[ntv]);
}

// Optimal objective (EUR/yr incl. constants), or nullopt when infeasible.
inline std::optional<double> solve(const ChainInput& in) {
  const Terms t = derive(in);
  const std::size_t ns = t.src.size(), nc = in.sinks.size();
  std::vector<int> domestic;
  for (std::size_t s = 0; s < ns; ++s) {
    if (!t.src[s].imported) domestic.push_back(static_cast<int>(s));
  }
  // Link decisions that carry cost: every station sink, and industry sinks in
  // the one-trip-per-link mode.
  std::vector<int> linked_sinks;
  for (std::size_t c = 0; c < nc; ++c) {
    if (in.sinks[c].is_station() || !in.trucks.industry_trips_per_load) linked_sinks.push_back(static_cast<int>(c));
  }
  std::optional<double> best;
  for (std::uint32_t mask = 0; mask < (1u << domestic.size()); ++mask) {
    std::vector<int> open(ns, 0);
    std::vector<int> on;
    for (std::size_t i = 0; i < domestic.size(); ++i) {
      if (mask & (1u << i)) open[domestic[i]] = 1;
    }
    for (std::size_t s = 0; s < ns; ++s) {
      if (open[s] || t.src[s].imported) on.push_back(static_cast<int>(s));
    }
    if (on.empty()) continue;
    // Each linked sink picks a nonempty subset of the active sources.
    const std::uint32_t per = (1u << on.size()) - 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < linked_sinks.size(); ++i) combos *= per;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::vector<std::vector<int>> link(ns, std::vector<int>(nc, 0));
      std::uint64_t rest = code;
      for (const int c : linked_sinks) {
        const std::uint32_t subset = static_cast<std::uint32_t>(rest % per) + 1;
        rest /= per;
        for (std::size_t i = 0; i < on.size(); ++i) {
          if (subset & (1u << i)) link[on[i]][c] = 1;
        }
      }
      const auto relaxed = inner(in, t, open, link, -1.0);
      if (!relaxed) continue;
      const double nt = relaxed->second;
      for (const double k : {std::floor(nt + 1e-9), std::ceil(nt - 1e-9)}) {
        const auto v = inner(in, t, open, link, k);
        if (v && (!best || v->first < *best)) best = v->first;
      }
    }
  }
  if (best) *best += t.constant;
  return best;
}

// Random instance: up to `max_candidates` sites, up to `max_sinks` sinks.
inline ChainInput random_instance(std::mt19937_64& rng, int max_candidates, int max_sinks) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ChainInput in;
  const bool literal = u(rng) < 0.2;
  // The one-trip-per-link mode enumerates links to every sink; keep it small.
  const int np = 1 + static_cast<int>(rng() % static_cast<unsigned>(literal ? std::min(max_candidates, 3) : max_candidates));
  const int nc = 1 + static_cast<int>(rng() % static_cast<unsigned>(literal ? std::min(max_sinks, 3) : max_sinks));
  const int max_stations = np <= 3 ? 2 : 1;
  for (int i = 0; i < np + 1; ++i) in.nodes.push_back({i, 300.0 * u(rng), 300.0 * u(rng)});
  for (int i = 0; i < np; ++i) in.candidates.push_back(in.nodes[i]);
  in.tariffs.ep_node.resize(in.nodes.size());
  for (auto& e : in.tariffs.ep_node) e = 0.02 + 0.1 * u(rng);
  in.tariffs.ep = 0.05 + 0.03 * u(rng);
  const Carrier carriers[] = {Carrier::LH2, Carrier::GH2, Carrier::LOHC};
  in.carrier = chain::default_carrier_params(carriers[rng() % 3]);
  in.trucks.industry_trips_per_load = !literal;
  int stations = 0;
  const double cap_max = in.production.cap_max_kg_day();
  for (int c = 0; c < nc; ++c) {
    demand::ConsumptionLocation loc;
    loc.id = c;
    loc.x = 300.0 * u(rng);
    loc.y = 300.0 * u(rng);
    loc.node = 0;
    if (stations < max_stations && u(rng) < 0.35) {
      loc.kind = u(rng) < 0.5 ? demand::LocationKind::StationCars : demand::LocationKind::StationTrucks;
      loc.kg_per_day = 300.0 + 700.0 * u(rng);
      ++stations;
    } else {
      loc.kind = demand::LocationKind::Industry;
      loc.kg_per_day = 2000.0 + 0.6 * cap_max * u(rng);
    }
    in.sinks.push_back(loc);
  }
  if (u(rng) < 0.3) {
    in.import.enabled = true;
    in.import.node = np;
    in.import.capacity_kg_day = 5000.0 + 20000.0 * u(rng);
    in.import.cost_eur_per_kg = 2.0 + 3.0 * u(rng);
  }
  return in;
}

}  // namespace chain_oracle
