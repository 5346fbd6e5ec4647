#include "h2grid/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

namespace h2grid::synth {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidSpec, what);
}

}  // namespace

grid::PowerSystem generate_synthetic_system(const SyntheticSpec& spec) {
  const int n = spec.n_nodes;
  check(n >= 2, "need at least two nodes");
  check(spec.n_lines >= n - 1, "need at least n_nodes - 1 lines for a connected network");
  check(spec.n_lines <= n * (n - 1) / 2, "more lines than node pairs");
  check(spec.hours >= 1, "need at least one hour");
  check(spec.congestion >= 0.0 && spec.congestion <= 1.0, "congestion must lie in [0, 1]");
  check(spec.renewable_share >= 0.0 && spec.renewable_share <= 5.0, "renewable share must lie in [0, 5]");
  check(spec.peak_demand_mw > 0.0 && std::isfinite(spec.peak_demand_mw), "peak demand must be positive");

  std::mt19937_64 rng(spec.seed);
  const auto u = [&] { return uniform01(rng); };
  const int north = n / 2 > 0 ? n / 2 : 1;
  const auto is_north = [&](int i) { return i < north; };

  std::vector<grid::Node> nodes;
  for (int i = 0; i < n; ++i) {
    const double y = is_north(i) ? 450.0 + 350.0 * u() : 350.0 * u();
    nodes.push_back({i, 600.0 * u(), y});
  }

  // Spanning tree to the nearest earlier node, then the shortest remaining pairs.
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    int best = 0;
    for (int j = 1; j < i; ++j) {
      if (grid::distance(nodes[i].location(), nodes[j].location()) <
          grid::distance(nodes[i].location(), nodes[best].location())) {
        best = j;
      }
    }
    pairs.emplace_back(best, i);
    used.emplace(best, i);
  }
  std::vector<std::tuple<double, int, int>> rest;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!used.count({i, j})) rest.emplace_back(grid::distance(nodes[i].location(), nodes[j].location()), i, j);
    }
  }
  std::sort(rest.begin(), rest.end());
  // A third of the extra lines go to the shortest north-south ties.
  const int extra = spec.n_lines - (n - 1);
  int ties = extra / 3;
  int added = 0;
  std::vector<char> taken(rest.size(), 0);
  for (std::size_t k = 0; k < rest.size() && ties > 0; ++k) {
    if (is_north(std::get<1>(rest[k])) != is_north(std::get<2>(rest[k]))) {
      taken[k] = 1;
      --ties;
      ++added;
    }
  }
  for (std::size_t k = 0; k < rest.size() && added < extra; ++k) {
    if (!taken[k]) {
      taken[k] = 1;
      ++added;
    }
  }
  for (std::size_t k = 0; k < rest.size(); ++k) {
    if (taken[k]) pairs.emplace_back(std::get<1>(rest[k]), std::get<2>(rest[k]));
  }

  const double scale = spec.peak_demand_mw / 2500.0;
  std::vector<grid::Line> lines;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    grid::Line l;
    l.id = static_cast<int>(k);
    l.from = a;
    l.to = b;
    l.voltage_class = u() < 0.5 ? grid::VoltageClass::kV220 : grid::VoltageClass::kV380;
    const double km = std::max(grid::distance(nodes[a].location(), nodes[b].location()), 10.0);
    l.reactance_pu = km * (l.voltage_class == grid::VoltageClass::kV380 ? 2.5e-4 : 8e-4);
    // Lines crossing between the regions form the corridor the knob tightens.
    const double corridor = is_north(a) != is_north(b) ? 1.0 - 0.9 * spec.congestion : 1.0;
    l.capacity_mw = grid::default_capacity_mw(l.voltage_class) * scale * corridor;
    lines.push_back(l);
  }

  const int hours = spec.hours;
  std::vector<double> weight(n);
  for (int i = 0; i < n; ++i) weight[i] = is_north(i) ? 0.3 + 0.4 * u() : 1.5 + 1.5 * u();
  double wsum = 0.0;
  for (const double w : weight) wsum += w;
  std::vector<double> node_peak(n);
  for (int i = 0; i < n; ++i) node_peak[i] = spec.peak_demand_mw * weight[i] / wsum;

  grid::DemandSeries demand(hours, n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int h = 0; h < hours; ++h) {
    const double day = (h / 24) % 7 >= 5 ? 0.9 : 1.0;
    const double profile = (0.78 + 0.14 * std::sin(two_pi * (h % 24 - 9) / 24.0)) * day;
    for (int i = 0; i < n; ++i) demand.at(h, i) = node_peak[i] * profile * (1.0 + 0.04 * (u() - 0.5));
  }

  // Capacity factors: a shared persistent wind state with local noise, and
  // a diurnal solar shape with daily cloudiness.
  std::vector<double> wind_cf(static_cast<std::size_t>(hours));
  double z = 0.0;
  for (int h = 0; h < hours; ++h) {
    z = 0.92 * z + 0.25 * (u() - 0.5);
    wind_cf[h] = std::clamp(0.38 + z, 0.02, 0.95);
  }
  std::vector<double> solar_cf(static_cast<std::size_t>(hours));
  double cloud = 1.0;
  for (int h = 0; h < hours; ++h) {
    if (h % 24 == 0) cloud = 0.5 + 0.5 * u();
    solar_cf[h] = std::max(0.0, std::sin(std::numbers::pi * (h % 24 - 6) / 12.0)) * cloud;
  }

  std::vector<grid::Generator> gens;
  const auto add = [&](int node, grid::GeneratorKind kind, double cost, double cap) {
    grid::Generator g;
    g.id = static_cast<int>(gens.size());
    g.node = node;
    g.kind = kind;
    g.marginal_cost = cost;
    g.capacity_mw = cap;
    gens.push_back(std::move(g));
    return static_cast<std::size_t>(gens.size() - 1);
  };
  std::vector<std::size_t> wind, solar;
  for (int i = 0; i < n; ++i) {
    if (is_north(i)) {
      add(i, grid::GeneratorKind::Dispatchable, 30.0 + 15.0 * u(), scale * (100.0 + 100.0 * u()));
    } else {
      add(i, grid::GeneratorKind::Dispatchable, 55.0 + 35.0 * u(), node_peak[i] * (0.9 + 0.3 * u()));
    }
    // Peaker sized for local self-supply so every hour and every redispatch is feasible.
    add(i, grid::GeneratorKind::Dispatchable, 250.0 + i, node_peak[i] * 1.2 + 0.08 * spec.peak_demand_mw);
    if (is_north(i)) {
      wind.push_back(add(i, grid::GeneratorKind::Wind, 0.0, 0.5 + u()));
    } else {
      solar.push_back(add(i, grid::GeneratorKind::Solar, 0.0, 0.5 + u()));
    }
  }

  const double target = spec.renewable_share * demand.total();
  const auto size_fleet = [&](const std::vector<std::size_t>& ids, const std::vector<double>& base_cf, double energy) {
    double raw = 0.0;
    for (const std::size_t id : ids) {
      auto& g = gens[id];
      g.series_mw.resize(static_cast<std::size_t>(hours));
      for (int h = 0; h < hours; ++h) {
        const double local = g.kind == grid::GeneratorKind::Wind ? std::clamp(base_cf[h] + 0.1 * (u() - 0.5), 0.0, 1.0)
                                                                 : base_cf[h];
        g.series_mw[h] = g.capacity_mw * local;
        raw += g.series_mw[h];
      }
    }
    const double f = raw > 0.0 ? energy / raw : 0.0;
    for (const std::size_t id : ids) {
      auto& g = gens[id];
      g.capacity_mw *= f;
      for (double& v : g.series_mw) v *= f;
    }
  };
  size_fleet(wind, wind_cf, 0.8 * target);
  size_fleet(solar, solar_cf, 0.2 * target);

  return grid::PowerSystem(std::move(nodes), std::move(lines), std::move(gens), std::move(demand), 0);
}

}  // namespace h2grid::synth
