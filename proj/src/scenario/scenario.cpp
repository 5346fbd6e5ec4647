#include "h2grid/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace h2grid::scenario {

std::string_view to_string(Spatial s) { return s == Spatial::Uniform ? "uniform" : "nodal"; }

std::string_view to_string(Temporal t) { return t == Temporal::Flat ? "flat" : "real_time"; }

std::string Scenario::id() const {
  std::string s = std::string(to_string(spatial)) + "_" + std::string(to_string(temporal));
  if (carrier != Carrier::LH2) s += "_" + std::string(to_string(carrier));
  return s;
}

Scenario parse_scenario(std::string_view id) {
  for (const Carrier c : {Carrier::LH2, Carrier::GH2, Carrier::LOHC}) {
    for (const Spatial sp : {Spatial::Uniform, Spatial::Nodal}) {
      for (const Temporal t : {Temporal::Flat, Temporal::RealTime}) {
        const Scenario s{sp, t, c};
        if (s.id() == id) return s;
      }
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown scenario '" + std::string(id) + "'");
}

std::vector<Scenario> standard_scenarios(Carrier carrier) {
  return {{Spatial::Uniform, Temporal::Flat, carrier},
          {Spatial::Nodal, Temporal::Flat, carrier},
          {Spatial::Uniform, Temporal::RealTime, carrier},
          {Spatial::Nodal, Temporal::RealTime, carrier}};
}

std::vector<double> cheap_hour_weights(std::span<const double> prices, double share) {
  if (prices.empty()) throw Error(ErrorCode::MissingSeries, "empty price series");
  if (!(share > 0.0 && share <= 1.0)) throw Error(ErrorCode::InvalidInput, "hour share must lie in (0, 1]");
  const std::size_t n = prices.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return prices[a] < prices[b]; });
  double target = share * static_cast<double>(n);
  if (std::abs(target - std::round(target)) < 1e-9) target = std::round(target);
  const auto full = static_cast<std::size_t>(std::floor(target));
  const double frac = target - static_cast<double>(full);
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k < full; ++k) w[order[k]] = 1.0;
  if (full < n && frac > 0.0) w[order[full]] = frac;
  return w;
}

double cheap_hour_mean(std::span<const double> prices, double share) {
  const auto w = cheap_hour_weights(prices, share);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t h = 0; h < prices.size(); ++h) {
    num += w[h] * prices[h];
    den += w[h];
  }
  return num / den;
}

namespace {

double mean(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::MissingSeries, "empty price series");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<std::vector<double>> price_series(const Baseline& baseline, Spatial spatial, int num_nodes) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(num_nodes));
  if (spatial == Spatial::Uniform) {
    if (baseline.uniform.market.empty()) throw Error(ErrorCode::MissingSeries, "no uniform price series");
    const auto p = baseline.uniform.uniform_price_series();
    for (auto& s : out) s = p;
    return out;
  }
  if (baseline.nodal.market.empty()) throw Error(ErrorCode::MissingSeries, "no nodal price series");
  for (const auto& h : baseline.nodal.market) {
    if (h.nodal_prices.size() != static_cast<std::size_t>(num_nodes)) {
      throw Error(ErrorCode::MissingSeries, "nodal prices missing in hour " + std::to_string(h.hour));
    }
  }
  for (int n = 0; n < num_nodes; ++n) out[n] = baseline.nodal.price_series(n);
  return out;
}

chain::TariffMap derive_tariffs(const Baseline& baseline, const Scenario& scenario, int num_nodes, double ngp) {
  std::vector<std::vector<double>> series;
  try {
    series = price_series(baseline, scenario.spatial, num_nodes);
    if (baseline.uniform.market.empty()) throw Error(ErrorCode::MissingSeries, "no uniform price series");
  } catch (const Error& e) {
    throw Error(ErrorCode::IncompleteBaseline, e.message());
  }
  chain::TariffMap t;
  t.ngp = ngp;
  t.ep_node.reserve(series.size());
  for (const auto& s : series) {
    const double p = scenario.temporal == Temporal::Flat ? mean(s) : cheap_hour_mean(s);
    t.ep_node.push_back(p / 1000.0);
  }
  t.ep = mean(baseline.uniform.uniform_price_series()) / 1000.0;
  return t;
}

grid::DemandSeries electrolyzer_loads(const chain::ChainDesign& design, const Scenario& scenario,
                                      std::span<const std::vector<double>> series, double ec_kwh_per_kg,
                                      int num_nodes, int hours) {
  grid::DemandSeries loads(hours, num_nodes);
  for (std::size_t s = 0; s < design.sources.size(); ++s) {
    const auto& src = design.sources[s];
    const double hp = design.production_kg_day[s];
    if (src.is_import || hp <= 0.0) continue;
    if (src.node < 0 || src.node >= num_nodes) throw Error(ErrorCode::InvalidInput, "electrolyzer outside the grid");
    const double flat_mw = hp * ec_kwh_per_kg / 24.0 / 1000.0;
    if (scenario.temporal == Temporal::Flat) {
      for (int h = 0; h < hours; ++h) loads.at(h, src.node) += flat_mw;
      continue;
    }
    if (static_cast<int>(series.size()) <= src.node || static_cast<int>(series[src.node].size()) < hours) {
      throw Error(ErrorCode::MissingSeries, "no price series for node " + std::to_string(src.node));
    }
    const auto w = cheap_hour_weights(std::span<const double>(series[src.node]).first(hours));
    const double full_mw = flat_mw / kRealTimeHourShare;
    for (int h = 0; h < hours; ++h) loads.at(h, src.node) += full_mw * w[h];
  }
  return loads;
}

grid::PowerSystem additionality_scale(const grid::PowerSystem& system, double added_mwh) {
  if (!(added_mwh >= 0.0) || !std::isfinite(added_mwh)) {
    throw Error(ErrorCode::InvalidInput, "added demand must be finite and nonnegative");
  }
  if (added_mwh == 0.0) return system;
  const double base = system.renewable_energy_mwh();
  if (!(base > 0.0)) throw Error(ErrorCode::CannotScale, "no renewable generation to scale");
  const double factor = (base + added_mwh) / base;
  auto gens = system.generators();
  for (auto& g : gens) {
    if (!g.renewable()) continue;
    for (double& v : g.series_mw) v *= factor;
  }
  return system.with_generators(std::move(gens));
}

double delta_pct(double value, double base) {
  if (base == 0.0) return value == 0.0 ? 0.0 : std::nan("");
  return (value - base) / base * 100.0;
}

ReportRow make_row(const std::string& name, const dispatch::AnnualDispatchSummary& summary, int hours) {
  if (hours <= 0) throw Error(ErrorCode::InvalidInput, "horizon must be positive");
  const double annualize = kHoursPerYear / hours;
  ReportRow r;
  r.scenario = name;
  r.demand_twh = summary.demand_mwh * annualize / 1e6;
  r.mean_price_eur_mwh = summary.mean_price;
  r.congestion_cost_meur = summary.congestion_cost_eur * annualize / 1e6;
  return r;
}

namespace {

template <class F>
auto annotated(const std::string& id, F&& f) {
  try {
    return f();
  } catch (const InfeasibleHourError& e) {
    throw InfeasibleHourError(e.hour(), e.deficit_mw(), id + ": " + e.message());
  } catch (const Error& e) {
    throw Error(e.code(), id + ": " + e.message());
  }
}

ScenarioResult run_scenario(const StudyInput& in, const Baseline& baseline, const std::vector<double>& spread,
                            const Scenario& sc, dispatch::AnnualDispatchSummary& after) {
  const auto& sys = in.system;
  const int hours = sys.hours();
  const int nodes = sys.num_nodes();
  ScenarioResult r;
  r.scenario = sc;
  r.tariffs = derive_tariffs(baseline, sc, nodes, in.ngp);

  chain::ChainInput ci;
  ci.sinks = in.sinks;
  ci.nodes = sys.nodes();
  if (in.candidate_nodes.empty()) {
    ci.candidates = sys.nodes();
  } else {
    for (const int n : in.candidate_nodes) ci.candidates.push_back(sys.nodes().at(static_cast<std::size_t>(n)));
  }
  ci.tariffs = r.tariffs;
  ci.carrier = in.carriers[static_cast<std::size_t>(sc.carrier)];
  ci.production = in.production;
  ci.trucks = in.trucks;
  ci.import = in.import;
  ci.wacc = in.wacc;
  r.design = chain::solve_chain(chain::build_chain_problem(ci), in.chain_lp);

  const double served = r.design.total_demand_kg_day * kDaysPerYear;
  if (served > 0.0) {
    r.end_use = chain::end_use_cost(r.design.costs, served, true, r.design.station_demand_kg_day * kDaysPerYear);
  }

  std::vector<std::vector<double>> series;
  if (sc.temporal == Temporal::RealTime) series = price_series(baseline, sc.spatial, nodes);
  const auto loads = electrolyzer_loads(r.design, sc, series, in.production.ec_kwh_per_kg, nodes, hours);
  r.added_mwh = loads.total();

  grid::DemandSeries demand = sys.demand();
  for (int h = 0; h < hours; ++h) {
    for (int n = 0; n < nodes; ++n) demand.at(h, n) += loads.at(h, n);
  }
  const double base_re = sys.renewable_energy_mwh();
  r.renewable_scale = r.added_mwh > 0.0 && base_re > 0.0 ? (base_re + r.added_mwh) / base_re : 1.0;
  const auto scaled = additionality_scale(sys, r.added_mwh).with_demand(std::move(demand));
  after = dispatch::run_year(scaled, hours, dispatch::Mode::UniformRedispatch, in.run);

  for (std::size_t s = 0; s < r.design.sources.size(); ++s) {
    const auto& src = r.design.sources[s];
    SitingRow row;
    row.node = src.node;
    row.is_import = src.is_import;
    row.open = r.design.open[s];
    row.production_kg_day = r.design.production_kg_day[s];
    if (!src.is_import) {
      double e = 0.0;
      for (int h = 0; h < hours; ++h) e += loads.at(h, src.node);
      row.load_mw = e / hours;
      row.tariff_eur_mwh = r.tariffs.ep_node[static_cast<std::size_t>(src.node)] * 1000.0;
    }
    row.price_spread_eur_mwh = spread[static_cast<std::size_t>(src.node)];
    r.siting.push_back(row);
  }
  return r;
}

}  // namespace

StudyReport run_full_study(const StudyInput& input) {
  const auto& sys = input.system;
  const int hours = sys.hours();
  if (hours <= 0) throw Error(ErrorCode::InvalidInput, "system has no hours");
  StudyReport report;
  report.hours = hours;

  Baseline baseline = annotated("baseline", [&] {
    Baseline b;
    b.uniform = dispatch::run_year(sys, hours, dispatch::Mode::UniformRedispatch, input.run);
    b.nodal = dispatch::run_year(sys, hours, dispatch::Mode::Nodal, input.run);
    return b;
  });
  report.price_spread_eur_mwh.resize(static_cast<std::size_t>(sys.num_nodes()));
  for (int n = 0; n < sys.num_nodes(); ++n) {
    report.price_spread_eur_mwh[n] = baseline.nodal.mean_nodal_prices[n] - baseline.uniform.mean_price;
  }
  report.rows.push_back(make_row("baseline", baseline.uniform, hours));
  const ReportRow base = report.rows.front();

  // Scenarios share only the read-only baseline; they run in order so the
  // report is assembled deterministically.
  for (const auto& sc : input.scenarios) {
    const std::string id = sc.id();
    dispatch::AnnualDispatchSummary after;
    report.scenarios.push_back(
        annotated(id, [&] { return run_scenario(input, baseline, report.price_spread_eur_mwh, sc, after); }));
    ReportRow row = make_row(id, after, hours);
    row.delta_demand_pct = delta_pct(row.demand_twh, base.demand_twh);
    row.delta_price_pct = delta_pct(row.mean_price_eur_mwh, base.mean_price_eur_mwh);
    row.delta_congestion_pct = delta_pct(row.congestion_cost_meur, base.congestion_cost_meur);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace h2grid::scenario
