#include <cmath>
#include <limits>
#include <map>

#include "h2grid/io.hpp"

namespace h2grid::io {

namespace {

constexpr int kInputDigits = 12;

int to_int(long long v, const std::string& what) {
  if (v < 0 || v > std::numeric_limits<int>::max()) throw Error(ErrorCode::InvalidInput, what + " out of range");
  return static_cast<int>(v);
}

}  // namespace

std::vector<grid::Node> load_nodes(const fs::path& path) {
  const auto t = CsvTable::read(path);
  t.require({"id", "x", "y"});
  std::vector<grid::Node> nodes;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    nodes.push_back({to_int(t.integer(r, "id"), "node id"), t.number(r, "x"), t.number(r, "y")});
  }
  return nodes;
}

std::vector<grid::Line> load_lines(const fs::path& path) {
  const auto t = CsvTable::read(path);
  t.require({"id", "from", "to", "voltage_class", "reactance_pu"});
  std::vector<grid::Line> lines;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    grid::Line l;
    l.id = to_int(t.integer(r, "id"), "line id");
    l.from = to_int(t.integer(r, "from"), "line endpoint");
    l.to = to_int(t.integer(r, "to"), "line endpoint");
    l.voltage_class = grid::parse_voltage_class(t.text(r, "voltage_class"));
    l.capacity_mw = t.number_or(r, "capacity_mw", grid::default_capacity_mw(l.voltage_class));
    l.reactance_pu = t.number(r, "reactance_pu");
    lines.push_back(l);
  }
  return lines;
}

std::vector<grid::Generator> load_generators(const fs::path& path, int hours) {
  const auto t = CsvTable::read(path);
  t.require({"id", "node", "kind", "marginal_cost"});
  std::map<std::string, CsvTable> profiles;
  std::vector<grid::Generator> gens;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    grid::Generator g;
    g.id = to_int(t.integer(r, "id"), "generator id");
    g.node = to_int(t.integer(r, "node"), "generator node");
    g.kind = grid::parse_generator_kind(t.text(r, "kind"));
    g.marginal_cost = t.number(r, "marginal_cost");
    if (!g.renewable()) {
      g.capacity_mw = t.number(r, "capacity_mw");
      gens.push_back(std::move(g));
      continue;
    }
    const std::string ref = t.has("series") ? t.text(r, "series") : std::string();
    const auto colon = ref.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == ref.size()) {
      throw Error(ErrorCode::InvalidInput, path.string() + ": generator " + std::to_string(g.id) +
                                               " needs a series reference '<file>:<column>'");
    }
    const std::string file = ref.substr(0, colon);
    const std::string column = ref.substr(colon + 1);
    auto it = profiles.find(file);
    if (it == profiles.end()) it = profiles.emplace(file, CsvTable::read(path.parent_path() / file)).first;
    const CsvTable& p = it->second;
    p.require({"hour"});
    if (static_cast<int>(p.rows()) < hours) {
      throw Error(ErrorCode::MissingSeries, file + " covers " + std::to_string(p.rows()) + " hours, need " +
                                                std::to_string(hours));
    }
    g.series_mw.resize(static_cast<std::size_t>(hours));
    for (int h = 0; h < hours; ++h) {
      if (p.integer(static_cast<std::size_t>(h), "hour") != h) {
        throw Error(ErrorCode::InvalidInput, file + ": hours must run 0, 1, ... in order");
      }
      g.series_mw[h] = p.number(static_cast<std::size_t>(h), column);
    }
    g.capacity_mw = t.number_or(r, "capacity_mw", 0.0);
    gens.push_back(std::move(g));
  }
  return gens;
}

grid::DemandSeries load_demand(const fs::path& path, int num_nodes) {
  const auto t = CsvTable::read(path);
  t.require({"hour", "node", "mw"});
  int hours = 0;
  for (std::size_t r = 0; r < t.rows(); ++r) hours = std::max(hours, to_int(t.integer(r, "hour"), "hour") + 1);
  grid::DemandSeries d(hours, num_nodes);
  std::vector<char> seen(static_cast<std::size_t>(hours) * num_nodes, 0);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const int h = static_cast<int>(t.integer(r, "hour"));
    const int n = to_int(t.integer(r, "node"), "node");
    if (n >= num_nodes) throw Error(ErrorCode::InvalidInput, path.string() + ": unknown node " + std::to_string(n));
    auto& s = seen[static_cast<std::size_t>(h) * num_nodes + n];
    if (s) {
      throw Error(ErrorCode::InvalidInput,
                  path.string() + ": duplicate entry for hour " + std::to_string(h) + " node " + std::to_string(n));
    }
    s = 1;
    d.at(h, n) = t.number(r, "mw");
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::MissingSeries, path.string() + ": no value for hour " + std::to_string(i / num_nodes) +
                                                " node " + std::to_string(i % num_nodes));
    }
  }
  return d;
}

grid::PowerSystem load_power_system(const SystemPaths& paths, int slack) {
  auto nodes = load_nodes(paths.nodes);
  auto lines = load_lines(paths.lines);
  auto demand = load_demand(paths.demand, static_cast<int>(nodes.size()));
  auto gens = load_generators(paths.generators, demand.hours());
  return grid::PowerSystem(std::move(nodes), std::move(lines), std::move(gens), std::move(demand), slack);
}

void write_power_system(const grid::PowerSystem& system, const fs::path& dir) {
  ensure_directory(dir);
  {
    CsvWriter w(dir / "nodes.csv", kInputDigits);
    w.header({"id", "x", "y"});
    for (const auto& n : system.nodes()) {
      w.cell(n.id).cell(n.x).cell(n.y);
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "lines.csv", kInputDigits);
    w.header({"id", "from", "to", "voltage_class", "capacity_mw", "reactance_pu"});
    for (const auto& l : system.lines()) {
      w.cell(l.id).cell(l.from).cell(l.to).cell(std::string(grid::to_string(l.voltage_class)));
      w.cell(l.capacity_mw).cell(l.reactance_pu);
      w.end_row();
    }
    w.close();
  }
  const int hours = system.hours();
  {
    CsvWriter w(dir / "generators.csv", kInputDigits);
    w.header({"id", "node", "kind", "marginal_cost", "capacity_mw", "series"});
    for (const auto& g : system.generators()) {
      w.cell(g.id).cell(g.node).cell(std::string(grid::to_string(g.kind))).cell(g.marginal_cost);
      if (g.renewable()) {
        w.cell(g.capacity_mw).cell("renewables.csv:gen_" + std::to_string(g.id));
      } else {
        w.cell(g.capacity_mw).cell(std::string());
      }
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "renewables.csv", kInputDigits);
    w.cell("hour");
    for (const auto& g : system.generators()) {
      if (g.renewable()) w.cell("gen_" + std::to_string(g.id));
    }
    w.end_row();
    for (int h = 0; h < hours; ++h) {
      w.cell(h);
      for (const auto& g : system.generators()) {
        if (g.renewable()) w.cell(g.series_mw[h]);
      }
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "demand.csv", kInputDigits);
    w.header({"hour", "node", "mw"});
    for (int h = 0; h < hours; ++h) {
      for (int n = 0; n < system.num_nodes(); ++n) {
        w.cell(h).cell(n).cell(system.demand().at(h, n));
        w.end_row();
      }
    }
    w.close();
  }
}

grid::PowerSystem truncate_horizon(const grid::PowerSystem& system, int hours) {
  if (hours <= 0 || hours > system.hours()) {
    throw Error(ErrorCode::InvalidInput, "horizon of " + std::to_string(hours) + " hours outside the data (" +
                                             std::to_string(system.hours()) + " hours)");
  }
  if (hours == system.hours()) return system;
  grid::DemandSeries d(hours, system.num_nodes());
  for (int h = 0; h < hours; ++h) {
    for (int n = 0; n < system.num_nodes(); ++n) d.at(h, n) = system.demand().at(h, n);
  }
  auto gens = system.generators();
  for (auto& g : gens) {
    if (g.renewable()) g.series_mw.resize(static_cast<std::size_t>(hours));
  }
  return grid::PowerSystem(system.nodes(), system.lines(), std::move(gens), std::move(d), system.slack());
}

std::vector<demand::IndustrialSite> load_industrial_sites(const fs::path& path) {
  const auto t = CsvTable::read(path);
  t.require({"name", "sector", "basis_kind", "basis_value", "x", "y"});
  std::vector<demand::IndustrialSite> sites;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    demand::IndustrialSite s;
    s.name = t.text(r, "name");
    s.sector = demand::parse_sector(t.text(r, "sector"));
    s.basis_kind = demand::parse_basis_kind(t.text(r, "basis_kind"));
    s.basis_value = t.number(r, "basis_value");
    s.factor = t.number_or(r, "factor", std::numeric_limits<double>::quiet_NaN());
    s.deduction_kg_h = t.number_or(r, "deduction", 0.0);
    s.x = t.number(r, "x");
    s.y = t.number(r, "y");
    sites.push_back(std::move(s));
  }
  return sites;
}

std::vector<demand::StationCandidate> load_station_candidates(const fs::path& path) {
  const auto t = CsvTable::read(path);
  t.require({"id", "x", "y", "weight"});
  std::vector<demand::StationCandidate> c;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    c.push_back({to_int(t.integer(r, "id"), "candidate id"), t.number(r, "x"), t.number(r, "y"),
                 t.number(r, "weight")});
  }
  return c;
}

}  // namespace h2grid::io
