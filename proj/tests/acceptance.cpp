// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "chain_oracle.hpp"
#include "h2grid/config.hpp"
#include "h2grid/demand.hpp"
#include "h2grid/dispatch.hpp"
#include "h2grid/scenario.hpp"
#include "invariants.hpp"
#include "test_systems.hpp"

using namespace h2grid;
namespace fs = std::filesystem;

namespace {

const fs::path kFixture = H2GRID_FIXTURE_DIR;
const fs::path kCli = H2GRID_CLI;

// Pinned tolerances.
constexpr double kTwhTol = 0.01;
constexpr double kEquivalenceRel = 1e-5;
constexpr double kOracleAbs = 1e-4;
constexpr double kOrderingSlack = 1e-6;
constexpr double kMicroTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Studies and corpora shared by several criteria, built once.
struct Corpus {
  std::uint64_t dispatch_seed = 20251015;
  int dispatch_systems = 120;
  std::uint64_t chain_seed = 4242;
  int chain_solved_target = 60;
  std::uint64_t lp_seed = 99;
  int lp_count = 300;
};

scenario::StudyReport fixture_study() {
  static const scenario::StudyReport report = [] {
    const auto cfg = config::load_study_config(kFixture / "config.json");
    return scenario::run_full_study(config::make_study_input(cfg, config::load_study_data(cfg)));
  }();
  return report;
}

const scenario::ReportRow& row(const scenario::StudyReport& r, const std::string& id) {
  for (const auto& x : r.rows) {
    if (x.scenario == id) return x;
  }
  throw std::runtime_error("missing report row " + id);
}

double end_use(const scenario::StudyReport& r, const std::string& id) {
  for (const auto& s : r.scenarios) {
    if (s.scenario.id() == id) return s.end_use.total_eur_per_kg;
  }
  throw std::runtime_error("missing scenario " + id);
}

demand::IndustrialSite site(demand::Sector sector, demand::BasisKind kind, double value, double factor = NAN,
                            double deduction = 0.0) {
  demand::IndustrialSite s;
  s.name = "site";
  s.sector = sector;
  s.basis_kind = kind;
  s.basis_value = value;
  s.factor = factor;
  s.deduction_kg_h = deduction;
  return s;
}

Outcome industrial_totals() {
  using demand::BasisKind;
  using demand::Sector;
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Target {
    const char* name;
    demand::IndustrialSite site;
    double twh;
  };
  const Target targets[] = {
      {"ammonia", site(Sector::Ammonia, BasisKind::Tons, 2955000), 17.49},
      {"rogesa", site(Sector::Steel, BasisKind::HourlyRate, 2, 3700), 2.1606},
      {"thyssenkrupp", site(Sector::Steel, BasisKind::AnnualH2Tons, 200000, NAN, 1700), 6.17},
      {"methanol", site(Sector::Methanol, BasisKind::Tons, 1865000), 11.73},
      {"refinery", site(Sector::Refinery, BasisKind::CrudeTons, 87013000), 4.29},
  };
  for (const auto& t : targets) {
    const double got = demand::industrial_site_demand(t.site) / 1e9;
    o.require(std::abs(got - t.twh) <= kTwhTol, std::string(t.name) + " " + num(got) + " TWh vs " + num(t.twh));
  }
  o.require(demand::kTruckTurnoverKgDay == 847.42, "truck turnover " + num(demand::kTruckTurnoverKgDay));
  const int stations = demand::station_count(1e9, demand::kTruckTurnoverKgDay);
  o.require(stations == 97, "truck stations " + std::to_string(stations));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 1.0, "runtime " + num(secs) + " s");
  if (o.pass) o.detail = "5 totals within 0.01 TWh, 97 truck stations";
  return o;
}

Outcome dispatch_equivalence(const Corpus& c) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(c.dispatch_seed);
  int feasible = 0, congested = 0;
  double worst = 0.0;
  for (int k = 0; k < c.dispatch_systems; ++k) {
    const int hours = 1 + static_cast<int>(rng() % 24);
    const double line_scale = k % 2 == 0 ? 1.0 : 0.4;
    const auto sys = testsys::random_system(rng, 12, 20, hours, line_scale);
    o.require(sys.num_nodes() <= 12 && sys.lines().size() <= 20 && sys.hours() <= 24, "system out of range");
    for (int t = 0; t < sys.hours(); ++t) {
      dispatch::HourDispatch u, n;
      dispatch::RedispatchAdjustment r;
      try {
        u = dispatch::uniform_dispatch(sys, t);
        r = dispatch::redispatch(sys, t, u);
        n = dispatch::nodal_dispatch(sys, t);
      } catch (const InfeasibleHourError&) {
        continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleRedispatch) throw;
        continue;
      }
      ++feasible;
      if (r.cost_eur > 1e-9) ++congested;
      const double rel = std::abs(u.cost_eur + r.cost_eur - n.cost_eur) / std::max(1.0, std::abs(n.cost_eur));
      worst = std::max(worst, rel);
      o.require(rel <= kEquivalenceRel, "system " + std::to_string(k) + " hour " + std::to_string(t) + " rel " + num(rel));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(feasible > 0 && congested > 0, "corpus has no congested feasible hours");
  o.require(secs < 120.0, "runtime " + num(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(c.dispatch_systems) + " systems, " + std::to_string(feasible) + " feasible hours (" +
               std::to_string(congested) + " congested), max rel error " + num(worst);
  }
  return o;
}

Outcome chain_oracle_equivalence(const Corpus& c) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(c.chain_seed);
  int solved = 0, infeasible = 0, trials = 0;
  double worst = 0.0;
  while (solved < c.chain_solved_target && trials < 10 * c.chain_solved_target) {
    ++trials;
    const auto in = chain_oracle::random_instance(rng, 5, 4);
    const auto expected = chain_oracle::solve(in);
    try {
      const auto d = chain::solve_chain(chain::build_chain_problem(in));
      if (!expected) {
        o.require(false, "instance " + std::to_string(trials) + " solved but the oracle finds it infeasible");
        continue;
      }
      const double err = std::abs(d.objective - *expected);
      worst = std::max(worst, err);
      o.require(err <= kOracleAbs, "instance " + std::to_string(trials) + " differs by " + num(err) + " EUR/year");
      ++solved;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ChainInfeasible && e.code() != ErrorCode::StructurallyInfeasible) throw;
      o.require(!expected, "instance " + std::to_string(trials) + " infeasible but the oracle solves it");
      ++infeasible;
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(solved >= 50, "only " + std::to_string(solved) + " solved instances");
  o.require(secs < 120.0, "runtime " + num(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(solved) + " instances within 1e-4 EUR/year (max " + num(worst) + "), " +
               std::to_string(infeasible) + " infeasible agreed";
  }
  return o;
}

Outcome congestion_direction() {
  Outcome o;
  const auto r = fixture_study();
  const double base = row(r, "baseline").congestion_cost_meur;
  const double uf = row(r, "uniform_flat").congestion_cost_meur;
  const double nf = row(r, "nodal_flat").congestion_cost_meur;
  o.require(uf > base, "uniform_flat " + num(uf) + " not above baseline " + num(base));
  o.require(nf < base, "nodal_flat " + num(nf) + " not below baseline " + num(base));
  if (o.pass) {
    o.detail = "baseline " + num(base) + " MEUR, uniform_flat " + num(row(r, "uniform_flat").delta_congestion_pct) +
               "%, nodal_flat " + num(row(r, "nodal_flat").delta_congestion_pct) + "%";
  }
  return o;
}

Outcome tariff_ordering() {
  Outcome o;
  const auto r = fixture_study();
  const double uf = end_use(r, "uniform_flat"), nf = end_use(r, "nodal_flat");
  const double ur = end_use(r, "uniform_real_time"), nr = end_use(r, "nodal_real_time");
  o.require(ur <= uf + kOrderingSlack, "uniform real-time " + num(ur) + " > flat " + num(uf));
  o.require(nr <= nf + kOrderingSlack, "nodal real-time " + num(nr) + " > flat " + num(nf));
  o.require(nf <= uf + kOrderingSlack, "flat nodal " + num(nf) + " > uniform " + num(uf));
  o.require(nr <= ur + kOrderingSlack, "real-time nodal " + num(nr) + " > uniform " + num(ur));
  if (o.pass) {
    o.detail = "EUR/kg uniform " + num(uf) + "/" + num(ur) + ", nodal " + num(nf) + "/" + num(nr) + " (flat/real-time)";
  }
  return o;
}

Outcome redispatch_micro() {
  Outcome o;
  const auto sys = testsys::two_node(120.0, 30.0);
  const auto u = dispatch::uniform_dispatch(sys, 0);
  const auto r = dispatch::redispatch(sys, 0, u);
  const auto n = dispatch::nodal_dispatch(sys, 0);
  o.require(std::abs(r.cost_eur - 2800.0) <= kMicroTol, "redispatch cost " + num(r.cost_eur));
  o.require(std::abs(r.flows_mw[0] - 30.0) <= kMicroTol, "post-redispatch flow " + num(r.flows_mw[0]));
  o.require(std::abs(u.cost_eur + r.cost_eur - n.cost_eur) <= kMicroTol, "nodal cost " + num(n.cost_eur));
  if (o.pass) o.detail = "cost " + num(r.cost_eur) + " EUR, flow " + num(r.flows_mw[0]) + " MW";
  return o;
}

Outcome solver_invariants(const Corpus& c) {
  Outcome o;
  int lps = 0, hours = 0, designs = 0;
  const auto note = [&](const checks::Violations& v, const std::string& where) {
    o.require(v.empty(), where + ": " + checks::join(v));
  };

  std::mt19937_64 lp_rng(c.lp_seed);
  for (int k = 0; k < c.lp_count; ++k) {
    const auto p = checks::random_lp(lp_rng, 2 + k % 7, 1 + k % 6);
    const auto s = lp::solve_lp(p);
    if (!s.optimal()) continue;
    ++lps;
    note(checks::lp_certificate_violations(p, s), "lp " + std::to_string(k));
  }

  const auto check_hours = [&](const grid::PowerSystem& sys, const std::string& tag) {
    for (int t = 0; t < sys.hours(); ++t) {
      dispatch::HourDispatch u, n;
      dispatch::RedispatchAdjustment r;
      try {
        u = dispatch::uniform_dispatch(sys, t);
        r = dispatch::redispatch(sys, t, u);
        n = dispatch::nodal_dispatch(sys, t);
      } catch (const InfeasibleHourError&) {
        continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleRedispatch) throw;
        continue;
      }
      ++hours;
      note(checks::hour_violations(sys, t, u, r, n), tag + " hour " + std::to_string(t));
    }
  };
  std::mt19937_64 rng(c.dispatch_seed);
  for (int k = 0; k < c.dispatch_systems; ++k) {
    const int h = 1 + static_cast<int>(rng() % 24);
    check_hours(testsys::random_system(rng, 12, 20, h, k % 2 == 0 ? 1.0 : 0.4), "system " + std::to_string(k));
  }
  const auto cfg = config::load_study_config(kFixture / "config.json");
  check_hours(config::load_study_data(cfg).system, "fixture");

  std::mt19937_64 chain_rng(c.chain_seed);
  for (int k = 0; k < 10 * c.chain_solved_target && designs < c.chain_solved_target; ++k) {
    const auto in = chain_oracle::random_instance(chain_rng, 5, 4);
    (void)chain_oracle::solve(in);  // keeps the stream aligned with the oracle corpus
    try {
      const auto cp = chain::build_chain_problem(in);
      const auto d = chain::solve_chain(cp);
      ++designs;
      note(checks::design_violations(cp, d), "chain " + std::to_string(k));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ChainInfeasible && e.code() != ErrorCode::StructurallyInfeasible) throw;
    }
  }
  o.require(lps > 0 && hours > 0 && designs > 0, "empty corpus");
  if (o.pass) {
    o.detail = std::to_string(lps) + " LPs, " + std::to_string(hours) + " dispatch hours, " + std::to_string(designs) +
               " chain designs";
  }
  return o;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream f(e.path(), std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    out[fs::relative(e.path(), root).generic_string()] = s.str();
  }
  return out;
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "h2grid_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  std::map<std::string, std::string> trees[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = root / ("run" + std::to_string(k));
    const std::string cmd = "\"" + kCli.string() + "\" --config \"" + (kFixture / "config.json").string() +
                            "\" --out \"" + out.string() + "\" study > \"" + (root / "log.txt").string() + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "run " + std::to_string(k) + " exited with " + std::to_string(rc));
    if (rc != 0) return o;
    trees[k] = read_tree(out);
  }
  o.require(!trees[0].empty(), "no output files");
  o.require(trees[0].size() == trees[1].size(), "file sets differ");
  for (const auto& [name, bytes] : trees[0]) {
    const auto it = trees[1].find(name);
    o.require(it != trees[1].end() && it->second == bytes, name + " differs");
  }
  if (o.pass) o.detail = std::to_string(trees[0].size()) + " files byte-identical";
  return o;
}

}  // namespace

int main() {
  const Corpus corpus;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"industrial demand totals", industrial_totals},
      {"dispatch equivalence on random systems", [&] { return dispatch_equivalence(corpus); }},
      {"chain MILP matches enumeration oracle", [&] { return chain_oracle_equivalence(corpus); }},
      {"directional congestion result", congestion_direction},
      {"tariff and temporal ordering", tariff_ordering},
      {"two-node redispatch micro-oracle", redispatch_micro},
      {"solver invariants over the corpus", [&] { return solver_invariants(corpus); }},
      {"study determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
