#include "h2grid/config.hpp"

#include <fstream>
#include <set>

#include "h2grid/io.hpp"

namespace h2grid::config {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigError, (key.empty() ? std::string("<root>") : key) + ": " + what);
}

fs::path resolve(const fs::path& base, const fs::path& p) {
  if (p.empty()) return p;
  return fs::weakly_canonical(p.is_absolute() ? p : base / p);
}

// Walks one JSON object, records the keys it consumes and rejects the rest.
class Reader {
 public:
  Reader(const json& j, std::string path, const fs::path& base) : j_(j), path_(std::move(path)), base_(base) {
    if (!j_.is_object()) config_error(path_, "expected an object");
  }

  std::string key_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) config_error(key_path(key), "expected a number");
      out = v->get<double>();
    }
  }

  void nonnegative(const char* key, double& out) {
    number(key, out);
    if (!(out >= 0.0)) config_error(key_path(key), "must be nonnegative");
  }

  void positive(const char* key, double& out) {
    number(key, out);
    if (!(out > 0.0)) config_error(key_path(key), "must be positive");
  }

  template <class Int>
  void integer(const char* key, Int& out, long long min = 0) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) config_error(key_path(key), "expected an integer");
      if (v->is_number_unsigned()) {
        out = static_cast<Int>(v->get<std::uint64_t>());
      } else {
        const auto x = v->get<long long>();
        if (x < min) config_error(key_path(key), "must be at least " + std::to_string(min));
        out = static_cast<Int>(x);
      }
      if (static_cast<long long>(out) < min && !v->is_number_unsigned()) {
        config_error(key_path(key), "must be at least " + std::to_string(min));
      }
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) config_error(key_path(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) config_error(key_path(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void path(const char* key, fs::path& out) {
    std::string s;
    if (find(key) == nullptr) return;
    string(key, s);
    out = resolve(base_, s);
  }

  template <class F>
  void object(const char* key, F&& f) {
    if (const json* v = find(key)) {
      Reader r(*v, key_path(key), base_);
      f(r);
      r.finish();
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) config_error(key_path(it.key().c_str()), "unknown key");
    }
  }

  const fs::path& base() const { return base_; }

 private:
  const json& j_;
  std::string path_;
  fs::path base_;
  std::set<std::string> seen_;
};

void read_step(Reader& r, const char* key, std::optional<chain::ConversionStep>& step) {
  const json* v = r.find(key);
  if (v == nullptr) return;
  if (v->is_null()) {
    step.reset();
    return;
  }
  chain::ConversionStep s = step.value_or(chain::ConversionStep{});
  Reader c(*v, r.key_path(key), r.base());
  c.string("name", s.name);
  c.nonnegative("coef_eur", s.coef_eur);
  c.positive("ref_kg_day", s.ref_kg_day);
  c.nonnegative("exponent", s.exponent);
  c.number("years", s.years);
  c.nonnegative("om_fraction", s.om_fraction);
  c.nonnegative("ec_kwh_per_kg", s.ec_kwh_per_kg);
  c.nonnegative("ngc_kwh_per_kg", s.ngc_kwh_per_kg);
  c.nonnegative("loss_fraction", s.loss_fraction);
  c.finish();
  step = s;
}

void read_carrier(Reader& r, chain::CarrierParams& p) {
  r.positive("trailer_capacity_kg", p.trailer_capacity_kg);
  r.nonnegative("trailer_invest_eur", p.trailer_invest_eur);
  r.number("trailer_years", p.trailer_years);
  r.nonnegative("trailer_om", p.trailer_om);
  r.nonnegative("loading_time_h", p.loading_time_h);
  r.nonnegative("station_loss", p.station_loss);
  read_step(r, "production_step", p.production_step);
  read_step(r, "consumption_step", p.consumption_step);
  r.object("station", [&](Reader& s) {
    s.number("alpha", p.station.alpha);
    s.number("beta", p.station.beta);
    s.number("gamma", p.station.gamma);
    s.nonnegative("ec_kwh_per_kg", p.station.ec_kwh_per_kg);
    s.nonnegative("ngc_kwh_per_kg", p.station.ngc_kwh_per_kg);
    s.integer("depreciation_years", p.station.depreciation_years, 1);
    s.nonnegative("om_fraction", p.station.om_fraction);
  });
}

json step_json(const std::optional<chain::ConversionStep>& s) {
  if (!s) return nullptr;
  return {{"name", s->name},
          {"coef_eur", s->coef_eur},
          {"ref_kg_day", s->ref_kg_day},
          {"exponent", s->exponent},
          {"years", s->years},
          {"om_fraction", s->om_fraction},
          {"ec_kwh_per_kg", s->ec_kwh_per_kg},
          {"ngc_kwh_per_kg", s->ngc_kwh_per_kg},
          {"loss_fraction", s->loss_fraction}};
}

std::string rel(const fs::path& p, const fs::path& to) {
  if (p.empty()) return "";
  return p.lexically_proximate(fs::weakly_canonical(to)).generic_string();
}

}  // namespace

StudyConfig parse_study_config(const json& doc, const fs::path& base_dir) {
  StudyConfig c;
  const fs::path base = fs::weakly_canonical(base_dir);
  c.output_dir = resolve(base, c.output_dir);
  Reader r(doc, "", base);
  r.object("inputs", [&](Reader& in) {
    in.path("nodes", c.inputs.nodes);
    in.path("lines", c.inputs.lines);
    in.path("generators", c.inputs.generators);
    in.path("demand", c.inputs.demand);
    in.path("industrial_sites", c.inputs.industrial_sites);
    in.path("station_candidates", c.inputs.station_candidates);
  });
  const bool some = !c.inputs.nodes.empty() || !c.inputs.lines.empty() || !c.inputs.generators.empty() ||
                    !c.inputs.demand.empty();
  const bool all = !c.inputs.nodes.empty() && !c.inputs.lines.empty() && !c.inputs.generators.empty() &&
                   !c.inputs.demand.empty();
  if (some && !all) config_error("inputs", "nodes, lines, generators and demand must be given together");
  r.object("synthetic", [&](Reader& s) {
    s.integer("n_nodes", c.synthetic.n_nodes, 2);
    s.integer("n_lines", c.synthetic.n_lines, 1);
    s.integer("hours", c.synthetic.hours, 1);
    s.number("congestion", c.synthetic.congestion);
    s.nonnegative("renewable_share", c.synthetic.renewable_share);
    s.positive("peak_demand_mw", c.synthetic.peak_demand_mw);
  });
  r.integer("seed", c.seed);
  c.synthetic.seed = c.seed;
  r.integer("horizon_hours", c.horizon_hours);
  r.path("output_dir", c.output_dir);
  if (const json* v = r.find("scenarios")) {
    if (!v->is_array()) config_error("scenarios", "expected an array of scenario ids");
    c.scenarios.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      const std::string key = "scenarios[" + std::to_string(i) + "]";
      if (!e.is_string()) config_error(key, "expected a scenario id");
      try {
        c.scenarios.push_back(scenario::parse_scenario(e.get<std::string>()));
      } catch (const Error& err) {
        config_error(key, err.message());
      }
    }
  }
  if (const json* v = r.find("candidate_nodes")) {
    if (!v->is_array()) config_error("candidate_nodes", "expected an array of node ids");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number_integer() || e.get<long long>() < 0) {
        config_error("candidate_nodes[" + std::to_string(i) + "]", "expected a node id");
      }
      c.candidate_nodes.push_back(e.get<int>());
    }
  }
  r.object("solver", [&](Reader& s) {
    s.positive("feasibility_tol", c.lp.feasibility_tol);
    s.positive("optimality_tol", c.lp.optimality_tol);
    s.positive("integrality_tol", c.lp.integrality_tol);
    s.integer("max_iterations", c.lp.max_iterations, 1);
    s.integer("max_nodes", c.lp.max_nodes, 1);
    s.boolean("parallel", c.parallel);
  });
  r.object("stations", [&](Reader& s) {
    s.nonnegative("truck_kwh", c.stations.truck_kwh);
    s.nonnegative("car_kwh", c.stations.car_kwh);
    s.positive("truck_turnover_kg_day", c.stations.truck_turnover_kg_day);
    s.positive("car_turnover_kg_day", c.stations.car_turnover_kg_day);
  });
  r.object("economics", [&](Reader& e) {
    e.nonnegative("wacc", c.wacc);
    e.nonnegative("ngp_eur_kwh", c.ngp);
    e.object("production", [&](Reader& p) {
      auto& q = c.production;
      p.nonnegative("ic_eur_per_kw", q.ic_eur_per_kw);
      p.number("years", q.years);
      p.nonnegative("om_fraction", q.om_fraction);
      p.positive("ec_kwh_per_kg", q.ec_kwh_per_kg);
      p.positive("efficiency", q.efficiency);
      p.positive("energy_density_kwh_per_kg", q.energy_density_kwh_per_kg);
      p.positive("capacity_factor", q.capacity_factor);
      p.nonnegative("cap_min_mw", q.cap_min_mw);
      p.positive("cap_max_mw", q.cap_max_mw);
      if (q.cap_min_mw > q.cap_max_mw) config_error("economics.production.cap_min_mw", "exceeds cap_max_mw");
    });
    e.object("trucks", [&](Reader& t) {
      auto& q = c.trucks;
      t.nonnegative("invest_eur", q.invest_eur);
      t.number("years", q.years);
      t.nonnegative("om_fraction", q.om_fraction);
      t.nonnegative("fuel_kg_per_km", q.fuel_kg_per_km);
      t.nonnegative("fuel_price_eur_per_kg", q.fuel_price_eur_per_kg);
      t.nonnegative("toll_eur_per_km", q.toll_eur_per_km);
      t.nonnegative("wage_eur_per_h", q.wage_eur_per_h);
      t.positive("speed_km_h", q.speed_km_h);
      t.positive("detour_factor", q.detour_factor);
      t.positive("working_hours_per_day", q.working_hours_per_day);
      t.boolean("industry_trips_per_load", q.industry_trips_per_load);
    });
    e.object("import", [&](Reader& i) {
      i.boolean("enabled", c.import.enabled);
      i.integer("node", c.import.node);
      i.nonnegative("capacity_kg_day", c.import.capacity_kg_day);
      i.nonnegative("cost_eur_per_kg", c.import.cost_eur_per_kg);
    });
    e.object("carriers", [&](Reader& cs) {
      for (const Carrier k : {Carrier::LH2, Carrier::GH2, Carrier::LOHC}) {
        const std::string name(to_string(k));
        cs.object(name.c_str(), [&](Reader& cr) { read_carrier(cr, c.carriers[static_cast<std::size_t>(k)]); });
      }
    });
  });
  r.finish();
  return c;
}

StudyConfig load_study_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(f, nullptr, true, false);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_study_config(doc, dir);
}

json to_json(const StudyConfig& c, const fs::path& to) {
  json j;
  j["inputs"] = {{"nodes", rel(c.inputs.nodes, to)},
                 {"lines", rel(c.inputs.lines, to)},
                 {"generators", rel(c.inputs.generators, to)},
                 {"demand", rel(c.inputs.demand, to)},
                 {"industrial_sites", rel(c.inputs.industrial_sites, to)},
                 {"station_candidates", rel(c.inputs.station_candidates, to)}};
  j["synthetic"] = {{"n_nodes", c.synthetic.n_nodes},
                    {"n_lines", c.synthetic.n_lines},
                    {"hours", c.synthetic.hours},
                    {"congestion", c.synthetic.congestion},
                    {"renewable_share", c.synthetic.renewable_share},
                    {"peak_demand_mw", c.synthetic.peak_demand_mw}};
  j["seed"] = c.seed;
  j["horizon_hours"] = c.horizon_hours;
  j["output_dir"] = rel(c.output_dir, to);
  j["scenarios"] = json::array();
  for (const auto& s : c.scenarios) j["scenarios"].push_back(s.id());
  j["candidate_nodes"] = c.candidate_nodes;
  j["solver"] = {{"feasibility_tol", c.lp.feasibility_tol},
                 {"optimality_tol", c.lp.optimality_tol},
                 {"integrality_tol", c.lp.integrality_tol},
                 {"max_iterations", c.lp.max_iterations},
                 {"max_nodes", c.lp.max_nodes},
                 {"parallel", c.parallel}};
  j["stations"] = {{"truck_kwh", c.stations.truck_kwh},
                   {"car_kwh", c.stations.car_kwh},
                   {"truck_turnover_kg_day", c.stations.truck_turnover_kg_day},
                   {"car_turnover_kg_day", c.stations.car_turnover_kg_day}};
  const auto& p = c.production;
  const auto& t = c.trucks;
  json carriers;
  for (const Carrier k : {Carrier::LH2, Carrier::GH2, Carrier::LOHC}) {
    const auto& cp = c.carriers[static_cast<std::size_t>(k)];
    carriers[std::string(to_string(k))] = {
        {"trailer_capacity_kg", cp.trailer_capacity_kg},
        {"trailer_invest_eur", cp.trailer_invest_eur},
        {"trailer_years", cp.trailer_years},
        {"trailer_om", cp.trailer_om},
        {"loading_time_h", cp.loading_time_h},
        {"station_loss", cp.station_loss},
        {"production_step", step_json(cp.production_step)},
        {"consumption_step", step_json(cp.consumption_step)},
        {"station",
         {{"alpha", cp.station.alpha},
          {"beta", cp.station.beta},
          {"gamma", cp.station.gamma},
          {"ec_kwh_per_kg", cp.station.ec_kwh_per_kg},
          {"ngc_kwh_per_kg", cp.station.ngc_kwh_per_kg},
          {"depreciation_years", cp.station.depreciation_years},
          {"om_fraction", cp.station.om_fraction}}}};
  }
  j["economics"] = {{"wacc", c.wacc},
                    {"ngp_eur_kwh", c.ngp},
                    {"production",
                     {{"ic_eur_per_kw", p.ic_eur_per_kw},
                      {"years", p.years},
                      {"om_fraction", p.om_fraction},
                      {"ec_kwh_per_kg", p.ec_kwh_per_kg},
                      {"efficiency", p.efficiency},
                      {"energy_density_kwh_per_kg", p.energy_density_kwh_per_kg},
                      {"capacity_factor", p.capacity_factor},
                      {"cap_min_mw", p.cap_min_mw},
                      {"cap_max_mw", p.cap_max_mw}}},
                    {"trucks",
                     {{"invest_eur", t.invest_eur},
                      {"years", t.years},
                      {"om_fraction", t.om_fraction},
                      {"fuel_kg_per_km", t.fuel_kg_per_km},
                      {"fuel_price_eur_per_kg", t.fuel_price_eur_per_kg},
                      {"toll_eur_per_km", t.toll_eur_per_km},
                      {"wage_eur_per_h", t.wage_eur_per_h},
                      {"speed_km_h", t.speed_km_h},
                      {"detour_factor", t.detour_factor},
                      {"working_hours_per_day", t.working_hours_per_day},
                      {"industry_trips_per_load", t.industry_trips_per_load}}},
                    {"import",
                     {{"enabled", c.import.enabled},
                      {"node", c.import.node},
                      {"capacity_kg_day", c.import.capacity_kg_day},
                      {"cost_eur_per_kg", c.import.cost_eur_per_kg}}},
                    {"carriers", carriers}};
  return j;
}

void write_effective_config(const StudyConfig& c) {
  io::ensure_directory(c.output_dir);
  const fs::path path = c.output_dir / "effective_config.json";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  f << to_json(c, c.output_dir).dump(2) << '\n';
}

StudyData load_study_data(const StudyConfig& c) {
  StudyData d;
  if (c.synthetic_network()) {
    synth::SyntheticSpec spec = c.synthetic;
    spec.seed = c.seed;
    d.system = synth::generate_synthetic_system(spec);
  } else {
    d.system = io::load_power_system({c.inputs.nodes, c.inputs.lines, c.inputs.generators, c.inputs.demand});
  }
  if (c.horizon_hours > 0) d.system = io::truncate_horizon(d.system, c.horizon_hours);

  std::vector<demand::IndustrialSite> sites;
  if (!c.inputs.industrial_sites.empty()) sites = io::load_industrial_sites(c.inputs.industrial_sites);
  std::vector<demand::ConsumptionLocation> stations;
  if (!c.inputs.station_candidates.empty()) {
    const auto cands = io::load_station_candidates(c.inputs.station_candidates);
    if (c.stations.truck_kwh > 0.0) {
      stations = demand::plan_stations(c.stations.truck_kwh, c.stations.truck_turnover_kg_day, cands,
                                       demand::LocationKind::StationTrucks);
    }
    if (c.stations.car_kwh > 0.0) {
      const auto cars = demand::plan_stations(c.stations.car_kwh, c.stations.car_turnover_kg_day, cands,
                                              demand::LocationKind::StationCars);
      stations.insert(stations.end(), cars.begin(), cars.end());
    }
  }
  d.sinks = demand::build_consumption_set(sites, stations, d.system.nodes());
  return d;
}

scenario::StudyInput make_study_input(const StudyConfig& c, StudyData data) {
  for (const int n : c.candidate_nodes) {
    if (n >= data.system.num_nodes()) {
      throw Error(ErrorCode::ConfigError, "candidate_nodes: node " + std::to_string(n) + " is not in the network");
    }
  }
  if (c.import.enabled && c.import.node >= data.system.num_nodes()) {
    throw Error(ErrorCode::ConfigError, "economics.import.node: not in the network");
  }
  scenario::StudyInput in;
  in.system = std::move(data.system);
  in.sinks = std::move(data.sinks);
  in.candidate_nodes = c.candidate_nodes;
  in.carriers = c.carriers;
  in.production = c.production;
  in.trucks = c.trucks;
  in.import = c.import;
  in.wacc = c.wacc;
  in.ngp = c.ngp;
  in.scenarios = c.scenarios;
  in.run.lp = c.lp;
  in.run.parallel = c.parallel;
  in.chain_lp = c.lp;
  return in;
}

}  // namespace h2grid::config
