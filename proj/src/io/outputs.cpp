#include <cmath>

#include "h2grid/io.hpp"

namespace h2grid::io {

void write_consumption(const std::vector<demand::ConsumptionLocation>& locations, const fs::path& path) {
  CsvWriter w(path);
  w.header({"id", "kind", "node", "kg_per_day"});
  for (const auto& c : locations) {
    w.cell(c.id).cell(std::string(demand::to_string(c.kind))).cell(c.node).cell(c.kg_per_day);
    w.end_row();
  }
  w.close();
}

void write_dispatch(const dispatch::AnnualDispatchSummary& uniform, const dispatch::AnnualDispatchSummary& nodal,
                    const grid::PowerSystem& system, const fs::path& dir) {
  ensure_directory(dir);
  {
    CsvWriter w(dir / "prices_uniform.csv");
    w.header({"hour", "price"});
    for (const auto& h : uniform.market) {
      w.cell(h.hour).cell(h.uniform_price);
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / "prices_nodal.csv");
    w.header({"hour", "node", "price"});
    for (const auto& h : nodal.market) {
      for (std::size_t n = 0; n < h.nodal_prices.size(); ++n) {
        w.cell(h.hour).cell(static_cast<int>(n)).cell(h.nodal_prices[n]);
        w.end_row();
      }
    }
    w.close();
  }
  {
    CsvWriter w(dir / "redispatch.csv");
    w.header({"hour", "generator", "delta_mw", "cost_eur"});
    for (const auto& a : uniform.adjustments) {
      for (std::size_t g = 0; g < a.delta_mw.size(); ++g) {
        if (std::abs(a.delta_mw[g]) <= 1e-9) continue;
        w.cell(a.hour).cell(static_cast<int>(g)).cell(a.delta_mw[g]);
        w.cell(a.delta_mw[g] * system.generators()[g].marginal_cost);
        w.end_row();
      }
    }
    w.close();
  }
  {
    CsvWriter w(dir / "summary.csv");
    w.header({"mode", "hours", "demand_mwh", "generation_cost_eur", "mean_price_eur_mwh", "congestion_cost_eur"});
    w.cell("uniform_redispatch").cell(uniform.hours).cell(uniform.demand_mwh).cell(uniform.generation_cost_eur);
    w.cell(uniform.mean_price).cell(uniform.congestion_cost_eur);
    w.end_row();
    w.cell("nodal").cell(nodal.hours).cell(nodal.demand_mwh).cell(nodal.generation_cost_eur);
    w.cell(nodal.mean_price).cell(nodal.congestion_cost_eur);
    w.end_row();
    w.close();
  }
}

namespace {

const std::pair<const char*, double chain::CostComponents::*> kComponents[] = {
    {"PCC", &chain::CostComponents::pcc}, {"POC", &chain::CostComponents::poc},
    {"CCC", &chain::CostComponents::ccc}, {"COC", &chain::CostComponents::coc},
    {"TCC", &chain::CostComponents::tcc}, {"TOC", &chain::CostComponents::toc},
    {"SCC", &chain::CostComponents::scc}, {"SOC", &chain::CostComponents::soc}};

void write_breakdown(const chain::ChainDesign& design, const fs::path& path) {
  chain::CostBreakdown per_kg;
  const double served = design.total_demand_kg_day * kDaysPerYear;
  if (served > 0.0) {
    per_kg = chain::end_use_cost(design.costs, served, true, design.station_demand_kg_day * kDaysPerYear);
  }
  CsvWriter w(path);
  w.header({"component", "EUR_per_year", "EUR_per_kg"});
  for (std::size_t i = 0; i < std::size(kComponents); ++i) {
    const double per = i < per_kg.eur_per_kg.size() ? per_kg.eur_per_kg[i].second : 0.0;
    w.cell(kComponents[i].first).cell(design.costs.*kComponents[i].second).cell(per);
    w.end_row();
  }
  w.cell("total").cell(design.costs.total()).cell(per_kg.total_eur_per_kg);
  w.end_row();
  w.close();
}

}  // namespace

void write_chain(const chain::ChainDesign& design, const std::vector<demand::ConsumptionLocation>& sinks,
                 const fs::path& dir, const std::string& suffix) {
  ensure_directory(dir);
  {
    CsvWriter w(dir / ("chain_design" + suffix + ".csv"));
    w.header({"source", "node", "import", "X", "HP_kg_day"});
    for (std::size_t s = 0; s < design.sources.size(); ++s) {
      w.cell(static_cast<int>(s)).cell(design.sources[s].node).cell(design.sources[s].is_import ? 1 : 0);
      w.cell(design.open[s]).cell(design.production_kg_day[s]);
      w.end_row();
    }
    w.close();
  }
  {
    CsvWriter w(dir / ("chain_flows" + suffix + ".csv"));
    w.header({"p", "c", "kg_day"});
    for (std::size_t s = 0; s < design.sources.size(); ++s) {
      for (std::size_t c = 0; c < sinks.size(); ++c) {
        if (design.flow_kg_day[s][c] <= 0.0) continue;
        w.cell(static_cast<int>(s)).cell(sinks[c].id).cell(design.flow_kg_day[s][c]);
        w.end_row();
      }
    }
    w.close();
  }
  write_breakdown(design, dir / ("cost_breakdown" + suffix + ".csv"));
}

void write_report(const scenario::StudyReport& report, const fs::path& dir) {
  ensure_directory(dir);
  {
    CsvWriter w(dir / "report.csv");
    w.header({"scenario", "demand_twh", "mean_price_eur_mwh", "congestion_cost_meur", "delta_demand_pct",
              "delta_price_pct", "delta_congestion_pct"});
    for (const auto& r : report.rows) {
      w.cell(r.scenario).cell(r.demand_twh).cell(r.mean_price_eur_mwh).cell(r.congestion_cost_meur);
      w.cell(r.delta_demand_pct).cell(r.delta_price_pct).cell(r.delta_congestion_pct);
      w.end_row();
    }
    w.close();
  }
  for (const auto& s : report.scenarios) {
    const std::string id = s.scenario.id();
    CsvWriter w(dir / ("siting_" + id + ".csv"));
    w.header({"node", "import", "open", "production_kg_day", "load_mw", "tariff_eur_mwh", "price_spread_eur_mwh"});
    for (const auto& row : s.siting) {
      w.cell(row.node).cell(row.is_import ? 1 : 0).cell(row.open).cell(row.production_kg_day);
      w.cell(row.load_mw).cell(row.tariff_eur_mwh).cell(row.price_spread_eur_mwh);
      w.end_row();
    }
    w.close();
    write_breakdown(s.design, dir / ("breakdown_" + id + ".csv"));
  }
}

}  // namespace h2grid::io
