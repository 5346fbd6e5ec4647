#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>

#include "h2grid/config.hpp"
#include "h2grid/io.hpp"

using namespace h2grid;

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidSpec:
      return 2;
    case ErrorCode::InfeasibleHour:
    case ErrorCode::InfeasibleRedispatch:
    case ErrorCode::StructurallyInfeasible:
    case ErrorCode::ChainInfeasible:
      return 3;
    default:
      return 1;
  }
}

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> hours;
};

config::StudyConfig effective(const Globals& g) {
  config::StudyConfig c;
  if (!g.config.empty()) {
    try {
      c = config::load_study_config(g.config);
    } catch (const Error& e) {
      // An unreadable config file is a configuration problem for the caller.
      if (e.code() == ErrorCode::IoError) throw Error(ErrorCode::ConfigError, e.message());
      throw;
    }
  } else {
    c = config::parse_study_config(nlohmann::json::object(), std::filesystem::current_path());
  }
  if (!g.out.empty()) c.output_dir = std::filesystem::weakly_canonical(std::filesystem::absolute(g.out));
  if (g.seed) {
    c.seed = *g.seed;
    c.synthetic.seed = *g.seed;
  }
  if (g.hours) {
    if (*g.hours < 1) throw Error(ErrorCode::ConfigError, "--hours must be positive");
    c.horizon_hours = *g.hours;
  }
  return c;
}

void cmd_dispatch(const config::StudyConfig& c) {
  const auto data = config::load_study_data(c);
  const auto in = config::make_study_input(c, data);
  const auto uniform = dispatch::run_year(in.system, in.system.hours(), dispatch::Mode::UniformRedispatch, in.run);
  const auto nodal = dispatch::run_year(in.system, in.system.hours(), dispatch::Mode::Nodal, in.run);
  io::write_dispatch(uniform, nodal, in.system, c.output_dir);
  std::cout << "mean uniform price " << io::format_number(uniform.mean_price) << " EUR/MWh, congestion cost "
            << io::format_number(uniform.congestion_cost_eur) << " EUR over " << uniform.hours << " h\n";
}

void cmd_demand(const config::StudyConfig& c) {
  const auto data = config::load_study_data(c);
  io::ensure_directory(c.output_dir);
  io::write_consumption(data.sinks, c.output_dir / "consumption.csv");
  std::cout << data.sinks.size() << " consumption locations, "
            << io::format_number(demand::total_kg_per_day(data.sinks)) << " kg/day\n";
}

void cmd_chain(const config::StudyConfig& c) {
  if (c.scenarios.empty()) throw Error(ErrorCode::ConfigError, "scenarios: at least one scenario is required");
  auto in = config::make_study_input(c, config::load_study_data(c));
  in.scenarios = {c.scenarios.front()};
  const auto report = scenario::run_full_study(in);
  const auto& s = report.scenarios.front();
  io::write_chain(s.design, in.sinks, c.output_dir);
  std::cout << s.scenario.id() << ": " << io::format_number(s.design.objective) << " EUR/year, "
            << io::format_number(s.end_use.total_eur_per_kg) << " EUR/kg\n";
}

void cmd_study(const config::StudyConfig& c) {
  const auto in = config::make_study_input(c, config::load_study_data(c));
  const auto report = scenario::run_full_study(in);
  io::write_report(report, c.output_dir);
  for (const auto& r : report.rows) {
    std::cout << r.scenario << ": congestion " << io::format_number(r.congestion_cost_meur) << " MEUR/yr ("
              << io::format_number(r.delta_congestion_pct) << "%)\n";
  }
}

void cmd_synth(const config::StudyConfig& c) {
  synth::SyntheticSpec spec = c.synthetic;
  spec.seed = c.seed;
  if (c.horizon_hours > 0) spec.hours = c.horizon_hours;
  io::write_power_system(synth::generate_synthetic_system(spec), c.output_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electricity and hydrogen supply chain study toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON study configuration");
  app.add_option("--out", g.out, "Output directory (overrides output_dir)");
  app.add_option("--seed", g.seed, "Seed for the synthetic generator");
  app.add_option("--hours", g.hours, "Horizon in hours");
  auto* dispatch_cmd = app.add_subcommand("dispatch", "Baseline dispatch in uniform and nodal mode");
  auto* demand_cmd = app.add_subcommand("demand", "Hydrogen consumption locations");
  auto* chain_cmd = app.add_subcommand("chain", "Supply chain design for the first configured scenario");
  auto* study_cmd = app.add_subcommand("study", "Full scenario study");
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic power system as CSV");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto c = effective(g);
    config::write_effective_config(c);
    if (dispatch_cmd->parsed()) cmd_dispatch(c);
    if (demand_cmd->parsed()) cmd_demand(c);
    if (chain_cmd->parsed()) cmd_chain(c);
    if (study_cmd->parsed()) cmd_study(c);
    if (synth_cmd->parsed()) cmd_synth(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
